#include <cmath>

#include "doctest.h"
#include "macroq/catalog.hpp"
#include "macroq/error.hpp"
#include "macroq/lindblad.hpp"
#include "macroq/measure.hpp"
#include "macroq/properties.hpp"
#include "oracles.hpp"

using namespace macroq;

TEST_SUITE("lindblad") {
  TEST_CASE("generator on simple states") {
    CHECK(lindblad_rhs(DensityMatrix::from_ket(make_fock(0, 5))).norm() == 0.0);
    const CMatrix l1 = lindblad_rhs(DensityMatrix::from_ket(make_fock(1, 5)));
    CMatrix ref = CMatrix::Zero(5, 5);
    ref(0, 0) = 1.0;
    ref(1, 1) = -1.0;
    CHECK((l1 - ref).norm() < 1e-15);
  }

  TEST_CASE("generator matches the explicit operator form and is traceless and Hermitian") {
    const ModeCutoffs c{4, 3};
    for (int k = 0; k < 10; ++k) {
      auto rng = case_rng(3, 9, static_cast<std::uint64_t>(k));
      const DensityMatrix rho(c, random_mixed_state(12, rng).matrix());
      const CMatrix l = lindblad_rhs(rho);
      oracle::Mat ref = oracle::Mat::Zero(12, 12);
      for (int m = 0; m < 2; ++m) {
        const oracle::Mat a = oracle::lowering_on({4, 3}, m), n = a.adjoint() * a;
        ref += a * rho.matrix() * a.adjoint() - 0.5 * (n * rho.matrix() + rho.matrix() * n);
      }
      CHECK((l - ref).norm() < 1e-13);
      CHECK(std::abs(l.trace()) < 1e-12);
      CHECK((l - l.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
    }
  }

  TEST_CASE("-Tr[rho L(rho)] equals the operator route") {
    for (int k = 0; k < 50; ++k) {
      auto rng = case_rng(5, 1, static_cast<std::uint64_t>(k));
      const DensityMatrix rho = random_mixed_state(6, rng);
      CHECK(std::abs(lindblad_measure(rho) - measure_operator(rho).value) < 1e-12);
    }
  }

  TEST_CASE("decohered cat follows the closed form and <n> decays exponentially") {
    EvolutionSpec spec;
    spec.tau_max = 0.5;
    spec.step = 0.005;
    spec.record_every = 10;
    spec.keep_states = true;
    const DensityMatrix rho0 = DensityMatrix::from_ket(make_scs(1.5, 30));
    const Trajectory traj = evolve(rho0, spec);
    REQUIRE(traj.points.size() == 11);
    REQUIRE(traj.states.size() == 11);
    const double n0 = mean_number(rho0);
    for (std::size_t k = 0; k < traj.points.size(); ++k) {
      const auto& p = traj.points[k];
      CAPTURE(p.tau);
      CHECK(std::abs(p.I - closed_form_decohered_scs({1.5, p.tau})) < 1e-6);
      CHECK(std::abs(p.mean_n - n0 * std::exp(-p.tau)) < 1e-6);
      CHECK((traj.states[k].matrix() - make_decohered_scs({1.5, p.tau}, 30).matrix()).norm() < 1e-6);
    }
    CHECK(traj.points.back().tau == doctest::Approx(0.5));
    CHECK(traj.max_trace_drift_rate <= 1e-8);
    spec.record_every = 1;
    spec.keep_states = false;
    for (const auto& r : purity_rate_residuals(evolve(rho0, spec))) CHECK(std::abs(r.residual) < 1e-5);
  }

  TEST_CASE("squeezed vacuum evolves into the damped Gaussian") {
    EvolutionSpec spec;
    spec.tau_max = 0.4;
    spec.step = 0.01;
    spec.record_every = 20;
    spec.keep_states = true;
    spec.check_positivity = false;
    const Trajectory traj = evolve(DensityMatrix::from_ket(make_squeezed_vacuum(1.5, 200)), spec);
    for (std::size_t k = 0; k < traj.points.size(); ++k) {
      const GaussianChar fit = fit_gaussian_char(traj.states[k]);
      const GaussianChar ref = gaussian_decohere(GaussianChar::squeezed(1.5), traj.points[k].tau);
      CAPTURE(traj.points[k].tau);
      CHECK(std::abs(fit.A() - ref.A()) < 1e-6);
      CHECK(std::abs(fit.B() - ref.B()) < 1e-6);
    }
  }

  TEST_CASE("thermal purity grows at first") {
    EvolutionSpec spec;
    spec.tau_max = 0.2;
    spec.step = 0.01;
    const Trajectory traj = evolve(make_thermal(1.0, 80), spec);
    CHECK(traj.points.front().I < 0.0);
    CHECK(traj.points[1].purity > traj.points[0].purity);
    const auto res = purity_rate_residuals(traj);
    REQUIRE(!res.empty());
    CHECK(res.front().dP > 0.0);
  }

  TEST_CASE("step control and failures") {
    const DensityMatrix rho = DensityMatrix::from_ket(make_scs(1.0, 20));
    EvolutionSpec spec;
    spec.step = 0.1;
    CHECK_THROWS_AS(evolve(rho, spec), InvalidArgument);
    spec.step = 0.0;
    CHECK_THROWS_AS(evolve(rho, spec), InvalidArgument);
    spec.step = 0.01;
    spec.record_every = 0;
    CHECK_THROWS_AS(evolve(rho, spec), InvalidArgument);
    spec.record_every = 1;
    spec.tau_max = 0.1;
    CHECK_THROWS_AS(evolve(rho, spec, LindbladModel{-1.0}), StepSizeError);
    spec.tau_max = 0.0;
    CHECK(evolve(rho, spec).points.size() == 1);
    // 0.3 / 0.04 is not an integer; the step shrinks to 0.0375 so the grid ends on tau_max.
    spec.tau_max = 0.3;
    spec.step = 0.04;
    const Trajectory t = evolve(rho, spec);
    CHECK(t.points.size() == 9);
    CHECK(t.points.back().tau == doctest::Approx(0.3));
    CHECK_THROWS_AS(fit_gaussian_char(DensityMatrix(ModeCutoffs{2, 2}, CMatrix::Identity(4, 4) / 4.0)), DimensionError);
  }
}

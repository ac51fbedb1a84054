#include <cmath>
#include <numbers>

#include "doctest.h"
#include "macroq/catalog.hpp"
#include "macroq/error.hpp"
#include "macroq/measure.hpp"
#include "oracles.hpp"

using namespace macroq;

namespace {

cplx eval(const CharFunction& f, cplx xi) { return f(std::span(&xi, 1)); }

const cplx kProbe[] = {{0.0, 0.0}, {0.3, -0.1}, {0.7, 0.4}, {-1.1, 0.6}, {0.2, 1.5}, {-1.8, -0.9}};

void check_char(const DensityMatrix& rho, const CharFunction& f, double tol) {
  for (cplx xi : kProbe) {
    CAPTURE(xi);
    CHECK(std::abs(eval(f, xi) - oracle::chi_dense(rho.matrix(), xi)) < tol);
  }
}

}  // namespace

TEST_SUITE("catalog") {
  TEST_CASE("SCS amplitudes, mean number and cutoff check") {
    const Ket s = make_scs(2.0, 40);
    const oracle::Vec ref = oracle::coherent(2.0, 40) + oracle::coherent(-2.0, 40);
    CHECK((s.amplitudes() - ref / ref.norm()).norm() < 1e-12);
    const DensityMatrix rho = DensityMatrix::from_ket(s);
    CHECK(mean_number(rho) == doctest::Approx(3.9973171).epsilon(1e-7));
    CHECK(std::abs(mean_number(rho) - scs_mean_n(2.0)) < 1e-8);
    CHECK_THROWS_AS(make_scs(2.0, 10), TruncationError);
    CHECK_THROWS_AS(make_fock(5, 5), TruncationError);
    CHECK_THROWS_AS(make_fock(-1, 5), InvalidArgument);
    const DensityMatrix small = DensityMatrix::from_ket(make_scs(1e-4, 12));
    CHECK(measure_operator(small).value < 1e-7);
  }

  TEST_CASE("decohered SCS state and closed form") {
    const DensityMatrix pure = make_decohered_scs({1.5, 0.0}, 30);
    CHECK((pure.matrix() - DensityMatrix::from_ket(make_scs(1.5, 30)).matrix()).norm() < 1e-12);
    for (double alpha : {1.0, 2.0})
      for (double tau : {0.1, 0.5, 1.0}) {
        const DecoheredSCSParams p{alpha, tau};
        const DensityMatrix rho = make_decohered_scs(p, 40);
        CAPTURE(alpha);
        CAPTURE(tau);
        CHECK(std::abs(measure_operator(rho).value - closed_form_decohered_scs(p)) < 1e-6);
        CHECK(std::abs(mean_number(rho) - decohered_scs_mean_n(p)) < 1e-9);
        CHECK(std::abs(purity(rho) - decohered_scs_purity(p)) < 1e-9);
      }
    CHECK(closed_form_decohered_scs({2.0, 0.0}) == doctest::Approx(4.0 * std::tanh(4.0)));
    CHECK(std::abs(closed_form_decohered_scs({2.0, std::log(2.0)})) < 1e-14);
    CHECK(closed_form_decohered_scs({2.0, 1.0}) < 0.0);
    CHECK(std::abs(closed_form_decohered_scs({2.0, 60.0})) < 1e-20);
    CHECK(std::isfinite(closed_form_decohered_scs({27.3, 0.5})));
    CHECK_THROWS_AS(DecoheredSCSParams(0.0, 0.1), InvalidArgument);
    CHECK_THROWS_AS(DecoheredSCSParams(1.0, -0.1), InvalidArgument);
  }

  TEST_CASE("Gaussian closed form") {
    CHECK(gaussian_measure({1.0, 1.0}) == 0.0);
    CHECK(gaussian_measure(GaussianChar::squeezed(1.5)) == doctest::Approx(std::pow(std::sinh(1.5), 2)).epsilon(1e-13));
    CHECK(gaussian_measure({3.0, 3.0}) == doctest::Approx(-1.0 / 9.0).epsilon(1e-14));
    CHECK(GaussianChar::thermal(1.0).A() == 3.0);
    CHECK_THROWS_AS(GaussianChar(0.5, 1.0), InvalidArgument);
    CHECK_THROWS_AS(GaussianChar(-1.0, -1.0), InvalidArgument);
    const GaussianChar g = GaussianChar::squeezed(1.5);
    const GaussianChar g0 = gaussian_decohere(g, 0.0);
    CHECK(g0.A() == doctest::Approx(g.A()));
    CHECK(g0.B() == doctest::Approx(g.B()));
    const GaussianChar ginf = gaussian_decohere(g, 60.0);
    CHECK(ginf.A() == doctest::Approx(1.0));
    CHECK(ginf.B() == doctest::Approx(1.0));
    CHECK(std::abs(gaussian_measure(ginf)) < 1e-12);
    const double t2 = std::exp(-0.4);
    const GaussianChar gt = gaussian_decohere(g, 0.4);
    CHECK(gt.A() == doctest::Approx(1.0 - t2 + std::exp(-3.0) * t2));
    CHECK(gt.B() == doctest::Approx(1.0 - t2 + std::exp(3.0) * t2));
  }

  TEST_CASE("Gaussian states in the Fock basis") {
    const Ket sq = make_squeezed_vacuum(0.5, 40);
    const DensityMatrix rs = DensityMatrix::from_ket(sq);
    CHECK(mean_number(rs) == doctest::Approx(std::pow(std::sinh(0.5), 2)).epsilon(1e-10));
    check_char(rs, char_gaussian(GaussianChar::squeezed(0.5)), 1e-10);
    const GaussianChar g(2.0, 1.5);
    const DensityMatrix rg = make_gaussian(g, 60);
    CHECK(mean_number(rg) == doctest::Approx(g.mean_n()).epsilon(1e-9));
    CHECK(purity(rg) == doctest::Approx(g.purity()).epsilon(1e-9));
    check_char(rg, char_gaussian(g), 1e-9);
    const DensityMatrix th = make_thermal(1.0, 60);
    CHECK(std::abs(measure_operator(th).value + 1.0 / 9.0) < 1e-6);
    check_char(th, char_gaussian(GaussianChar::thermal(1.0)), 1e-8);
  }

  TEST_CASE("analytic characteristic functions match the Fock-basis states") {
    check_char(DensityMatrix::from_ket(make_fock(0, 10)), char_vacuum(), 1e-12);
    check_char(DensityMatrix::from_ket(make_fock(3, 12)), char_fock(3), 1e-12);
    check_char(DensityMatrix::from_ket(make_coherent({0.8, -0.3}, 30)), char_coherent({0.8, -0.3}), 1e-11);
    check_char(DensityMatrix::from_ket(make_scs(1.5, 30)), char_scs(1.5), 1e-11);
    check_char(make_decohered_scs({1.5, 0.3}, 30), char_decohered_scs({1.5, 0.3}), 1e-11);
    check_char(make_mixture_scs(1.2, 30), char_mixture_scs(1.2), 1e-11);
    check_char(make_thermal_scs({2.0, 1.0}, 60), char_thermal_scs({2.0, 1.0}), 1e-8);
    for (cplx xi : kProbe) {
      const cplx b{0.4, 0.2}, g{-0.3, 0.5};
      CHECK(std::abs(coherent_dyad_char(b, g, xi) - std::exp(oracle::log_dyad_char(b, g, xi))) < 1e-14);
    }
    const CharFunction prod = char_product({char_fock(1), char_coherent(0.5)});
    const cplx two[] = {{0.3, 0.1}, {-0.2, 0.4}};
    CHECK(std::abs(prod(two) - eval(char_fock(1), two[0]) * eval(char_coherent(0.5), two[1])) < 1e-15);
  }

  TEST_CASE("thermal-component superposition") {
    for (double V : {2.0, 5.0, 10.0})
      for (double d : {0.0, 1.0, 3.0}) {
        const CharFunction f = char_thermal_scs({V, d});
        for (cplx xi : kProbe) {
          CAPTURE(V);
          CAPTURE(d);
          CAPTURE(xi);
          CHECK(std::abs(eval(f, xi) - oracle::thermal_scs_chi(V, d, xi)) < 1e-12);
        }
      }
    const DensityMatrix rho = make_thermal_scs({2.0, 1.0}, 60);
    CHECK(mean_number(rho) == doctest::Approx(thermal_scs_mean_n({2.0, 1.0})).epsilon(1e-9));
    CHECK(purity(rho) == doctest::Approx(thermal_scs_purity({2.0, 1.0})).epsilon(1e-9));
    CHECK(measure_operator(rho).value == doctest::Approx(thermal_scs_measure({2.0, 1.0})).epsilon(1e-8));
    CHECK(std::abs(thermal_scs_measure({1.0, 0.0})) < 1e-14);
    CHECK(std::abs(thermal_scs_measure({1e4, 0.0}) - 0.5) < 1e-2);
    CHECK(thermal_scs_measure({1.0, 2.0}) == doctest::Approx(scs_mean_n(2.0)).epsilon(1e-12));
    // The form as printed disagrees with the state it describes.
    CHECK(std::abs(thermal_scs_measure_as_printed({2.0, 1.0}) - thermal_scs_measure({2.0, 1.0})) > 0.1);
    CHECK(thermal_scs_measure_as_printed({1e4, 0.0}) == doctest::Approx(thermal_scs_measure({1e4, 0.0})));
    CHECK_THROWS_AS(ThermalSCSParams(0.5, 1.0), InvalidArgument);
    CHECK_THROWS_AS(ThermalSCSParams(2.0, -1.0), InvalidArgument);
  }

  TEST_CASE("multi-mode constructors") {
    const ProductRankState a = make_dur_state(6, std::numbers::pi / 2), b = make_ghz(6);
    CHECK((to_dense(a).matrix() - to_dense(b).matrix()).norm() < 1e-14);
    CHECK(make_noon(3).modes() == 2);
    CHECK(make_noon(3).factor_dims() == std::vector<int>{4, 4});
  }
}

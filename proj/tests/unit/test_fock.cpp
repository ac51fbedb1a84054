#include <cstdlib>

#include "doctest.h"
#include "macroq/catalog.hpp"
#include "macroq/error.hpp"
#include "macroq/fock.hpp"
#include "oracles.hpp"

using namespace macroq;

TEST_SUITE("fock") {
  TEST_CASE("flat index follows Kronecker order with mode 0 outermost") {
    ModeCutoffs c{3, 4, 2};
    CHECK(c.total() == 24);
    CHECK(c.stride(0) == 8);
    CHECK(c.stride(2) == 1);
    const int lv[] = {2, 1, 1};
    const auto idx = c.flat_index(lv);
    CHECK(idx == 2 * 8 + 1 * 2 + 1);
    CHECK(c.multi_index(idx) == std::vector<int>{2, 1, 1});
    CHECK(c.total_number(idx) == 4);
    const int bad[] = {3, 0, 0};
    CHECK_THROWS_AS(c.flat_index(bad), InvalidArgument);
    CHECK_THROWS_AS(ModeCutoffs({}), InvalidArgument);
    CHECK_THROWS_AS(ModeCutoffs({2, 0}), InvalidArgument);
  }

  TEST_CASE("state validation") {
    CVector v = CVector::Zero(3);
    v(0) = 2.0;
    CHECK_THROWS_AS(Ket(ModeCutoffs{3}, v), InvalidArgument);
    CHECK_THROWS_AS(Ket(ModeCutoffs{4}, v), DimensionError);
    CHECK(Ket::normalized(ModeCutoffs{3}, v).amplitudes()(0) == cplx(1.0));
    CHECK_THROWS_AS(Ket::normalized(ModeCutoffs{3}, CVector::Zero(3)), InvalidArgument);

    CMatrix m = CMatrix::Identity(2, 2) * 0.5;
    m(0, 1) = cplx(0.1, 0.2);
    CHECK_THROWS_AS(DensityMatrix(ModeCutoffs{2}, m), InvalidArgument);
    m(1, 0) = std::conj(m(0, 1));
    CHECK_NOTHROW(DensityMatrix(ModeCutoffs{2}, m));
    CHECK_THROWS_AS(DensityMatrix(ModeCutoffs{2}, 2.0 * m), InvalidArgument);
    CMatrix neg = CMatrix::Zero(2, 2);
    neg(0, 0) = 1.5;
    neg(1, 1) = -0.5;
    DensityMatrix bad(ModeCutoffs{2}, neg);
    CHECK_THROWS_AS(bad.check_positive(), InvalidArgument);
  }

  TEST_CASE("ladder operators match the explicit Kronecker construction") {
    ModeCutoffs c{3, 4};
    for (int m = 0; m < 2; ++m) {
      CHECK((annihilation_op(c, m) - oracle::lowering_on({3, 4}, m)).norm() < 1e-15);
      CHECK((creation_op(c, m) - oracle::lowering_on({3, 4}, m).adjoint()).norm() < 1e-15);
    }
    const CMatrix n = number_op(c);
    const CMatrix ref = oracle::lowering_on({3, 4}, 0).adjoint() * oracle::lowering_on({3, 4}, 0) +
                        oracle::lowering_on({3, 4}, 1).adjoint() * oracle::lowering_on({3, 4}, 1);
    CHECK((n - ref).norm() < 1e-14);
  }

  TEST_CASE("displacement elements match the matrix exponential") {
    for (cplx beta : {cplx(0.3, -0.2), cplx(1.0, 0.5), cplx(-2.0, 1.5), cplx(3.0, 4.0)}) {
      const int dim = 60;
      const CMatrix d = displacement_matrix(beta, dim);
      const oracle::Mat ref = oracle::displacement_expm(beta, dim, 120);
      CAPTURE(beta);
      CHECK((d - ref).cwiseAbs().maxCoeff() < 1e-10);
    }
    CHECK((displacement_matrix(0.0, 5) - CMatrix::Identity(5, 5)).norm() == 0.0);
    CHECK_THROWS_AS(displacement_matrix(1.0, 0), InvalidArgument);
  }

  TEST_CASE("displacement of the vacuum is a coherent state") {
    const cplx beta{1.2, -0.7};
    const CMatrix d = displacement_matrix(beta, 40);
    CHECK((d.col(0) - oracle::coherent(beta, 40)).norm() < 1e-13);
  }

  TEST_CASE("apply_displacement and apply_rotation") {
    const DensityMatrix vac = DensityMatrix::from_ket(make_fock(0, 30));
    const cplx beta{1.0, 0.5};
    const DensityMatrix coh = apply_displacement(vac, std::span(&beta, 1));
    const oracle::Vec ref = oracle::coherent(beta, 30);
    CHECK((coh.matrix() - ref * ref.adjoint()).norm() < 1e-10);
    CHECK(mean_number(coh) == doctest::Approx(std::norm(beta)).epsilon(1e-10));

    const cplx far{4.0, 0.0};
    CHECK_THROWS_AS(apply_displacement(vac, std::span(&far, 1)), TruncationError);
    CHECK_THROWS_AS(apply_displacement(vac, std::span<const cplx>()), InvalidArgument);

    const double theta = 0.37;
    const DensityMatrix rot = apply_rotation(coh, std::span(&theta, 1));
    const oracle::Vec rref = oracle::coherent(beta * std::polar(1.0, theta), 30);
    CHECK((rot.matrix() - rref * rref.adjoint()).norm() < 1e-10);
  }

  TEST_CASE("tensor products") {
    const Ket a = make_coherent({0.4, 0.1}, 14), b = make_fock(2, 4);
    const Ket ab = tensor(a, b);
    CHECK(ab.cutoffs() == ModeCutoffs{14, 4});
    CHECK((ab.amplitudes() - oracle::kron(oracle::Vec(a.amplitudes()), oracle::Vec(b.amplitudes()))).norm() < 1e-14);
    const DensityMatrix r = tensor(DensityMatrix::from_ket(a), DensityMatrix::from_ket(b));
    CHECK((r.matrix() - DensityMatrix::from_ket(ab).matrix()).norm() < 1e-14);
    CHECK(mean_number(r) == doctest::Approx(mean_number(DensityMatrix::from_ket(a)) + 2.0));
  }

  TEST_CASE("purity, mean number and top-level population") {
    const DensityMatrix mm = make_maximally_mixed(5);
    CHECK(purity(mm) == doctest::Approx(0.2));
    CHECK(mean_number(mm) == doctest::Approx(2.0));
    CHECK(top_level_population(mm, 0) == doctest::Approx(0.4));
    CHECK(top_level_population(DensityMatrix::from_ket(make_fock(0, 5)), 0) == 0.0);
  }

  TEST_CASE("cutoff heuristics") {
    CHECK(suggest_cutoff(0.0) == 10);
    CHECK(suggest_cutoff(4.0) == 26);
    CHECK(suggest_cutoff(-1.0) == 10);
    setenv("MACROQ_DEFAULT_CUTOFF", "17", 1);
    CHECK(default_cutoff(100.0) == 17);
    setenv("MACROQ_DEFAULT_CUTOFF", "x", 1);
    CHECK_THROWS_AS(default_cutoff(1.0), InvalidArgument);
    unsetenv("MACROQ_DEFAULT_CUTOFF");
    CHECK(default_cutoff(4.0) == 26);
  }
}

#include <cmath>

#include "doctest.h"
#include "macroq/catalog.hpp"
#include "macroq/error.hpp"
#include "macroq/measure.hpp"
#include "macroq/phase_space.hpp"
#include "oracles.hpp"

using namespace macroq;

TEST_SUITE("measure") {
  TEST_CASE("operator route on Fock states and the dense oracle") {
    for (int n = 0; n <= 10; ++n) {
      const MeasureResult r = measure_operator(DensityMatrix::from_ket(make_fock(n, n + 2)));
      CHECK(std::abs(r.value - n) < 1e-12);
      CHECK(r.mean_n == doctest::Approx(n));
      CHECK(r.route == Route::operator_trace);
    }
    const DensityMatrix rho = make_decohered_scs({1.3, 0.4}, 25);
    CHECK(measure_operator(rho).value == doctest::Approx(oracle::measure_dense(rho.matrix(), {25})).epsilon(1e-13));
  }

  TEST_CASE("signed values") {
    const MeasureResult r = measure_operator(make_thermal(1.0, 80));
    CHECK(r.value < 0.0);
    CHECK(std::abs(measure_operator(make_maximally_mixed(4)).value) < 1e-14);
  }

  TEST_CASE("truncation warnings on the operator route") {
    const MeasureResult clean = measure_operator(DensityMatrix::from_ket(make_coherent(1.0, 30)));
    CHECK(clean.warnings.empty());
    CHECK(clean.err_estimate == 0.0);
    const MeasureResult tight = measure_operator(DensityMatrix::from_ket(make_squeezed_vacuum(1.5, 60)));
    REQUIRE(tight.warnings.size() == 1);
    CHECK(tight.err_estimate > std::abs(tight.value - gaussian_measure(GaussianChar::squeezed(1.5))));
    const MeasureResult fock = measure_operator(DensityMatrix::from_ket(make_fock(3, 5)));
    CHECK(fock.warnings.size() == 1);
    CHECK(fock.err_estimate <= 5.0);
  }

  TEST_CASE("phase-space convention: vacuum gives 0 and |1> gives 1 on every route") {
    for (int n : {0, 1}) {
      const DensityMatrix rho = DensityMatrix::from_ket(make_fock(n, 12));
      CHECK(std::abs(measure_operator(rho).value - n) < 1e-12);
      CHECK(std::abs(measure_char_quadrature(n ? char_fock(1) : char_vacuum(), 1).value - n) < 1e-8);
      CHECK(std::abs(measure_wigner_grid(wigner_of(rho)).value - n) < 1e-6);
    }
  }

  TEST_CASE("quadrature route reports diagnostics") {
    const MeasureResult r = measure_char_quadrature(char_scs(1.5), 1);
    CHECK(r.route == Route::char_quadrature);
    CHECK(r.value == doctest::Approx(closed_form_decohered_scs({1.5, 0.0})).epsilon(1e-8));
    CHECK(r.mean_n == doctest::Approx(scs_mean_n(1.5)).epsilon(1e-4));
    CHECK(r.purity == doctest::Approx(1.0).epsilon(1e-6));
    const MeasureResult g = measure_char_quadrature(char_gaussian({2.0, 3.0}), 1);
    CHECK(g.value == doctest::Approx(gaussian_measure({2.0, 3.0})).epsilon(1e-8));
    CHECK(g.purity == doctest::Approx(GaussianChar(2.0, 3.0).purity()).epsilon(1e-7));
  }

  TEST_CASE("quadrature agrees with an independent polar rule") {
    for (auto [V, d] : {std::pair{5.0, 3.0}, std::pair{2.0, 1.0}}) {
      const double ref = oracle::polar_measure([&](oracle::cplx xi) { return oracle::thermal_scs_chi(V, d, xi); }, 8.0 * std::sqrt(V) + 2.0 * d, 128, 256);
      const MeasureResult r = measure_char_quadrature(char_thermal_scs({V, d}), 1);
      CAPTURE(V);
      CHECK(std::abs(r.value - ref) < 1e-7);
    }
  }

  TEST_CASE("two-mode quadrature adds over a product") {
    QuadratureOptions q;
    q.tol = 1e-6;
    const MeasureResult r = measure_char_quadrature(char_product({char_fock(1), char_vacuum()}), 2, q);
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-4));
  }

  TEST_CASE("quadrature failures") {
    QuadratureOptions q;
    q.tol = 1e-15;
    q.max_depth = 1;
    q.auto_extend = false;
    CHECK_THROWS_AS(measure_char_quadrature(char_gaussian(GaussianChar::squeezed(2.0)), 1, q), ConvergenceError);
    CHECK_THROWS_AS(measure_char_quadrature(char_vacuum(), 0), InvalidArgument);
  }

  TEST_CASE("grid route checks coverage and normalization") {
    const DensityMatrix rho = DensityMatrix::from_ket(make_coherent(2.0, 40));
    const WignerGrid narrow = wigner_of(rho, symmetric_axis(3.5, 64), symmetric_axis(3.5, 64), 1.0);
    CHECK_THROWS_AS(measure_wigner_grid(narrow), CoverageError);
    WignerGrid g = wigner_of(DensityMatrix::from_ket(make_fock(1, 10)), 128);
    g.values *= 1.1;
    CHECK_THROWS_AS(measure_wigner_grid(g), NormalizationError);
    GridCheckOptions lax;
    lax.strict_normalization = false;
    const MeasureResult r = measure_wigner_grid(g, lax);
    CHECK(r.warnings.size() == 1);
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(r.mean_n == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(r.purity == doctest::Approx(1.0).epsilon(1e-6));
  }

  TEST_CASE("grid route on a cat state") {
    const DensityMatrix rho = DensityMatrix::from_ket(make_scs(2.0, 40));
    const MeasureResult r = measure_wigner_grid(wigner_of(rho));
    CHECK(std::abs(r.value - scs_mean_n(2.0)) < 1e-6);
    CHECK(r.err_estimate < 1e-3);
  }

  TEST_CASE("route names") {
    CHECK(route_name(Route::operator_trace) == "operator");
    CHECK(route_name(Route::char_quadrature) == "char-quadrature");
    CHECK(route_name(Route::wigner_grid) == "wigner-grid");
    CHECK(route_name(Route::closed_form) == "closed-form");
    CHECK(route_name(Route::low_rank) == "low-rank");
  }
}

#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "macroq/error.hpp"
#include "macroq/fock.hpp"
#include "macroq/measure.hpp"
#include "macroq/properties.hpp"

using namespace macroq;

namespace {

const PropertyOutcome& find(const PropertyReport& r, const std::string& name) {
  auto it = std::find_if(r.outcomes.begin(), r.outcomes.end(), [&](const auto& o) { return o.name == name; });
  REQUIRE(it != r.outcomes.end());
  return *it;
}

}  // namespace

TEST_SUITE("properties") {
  TEST_CASE("random states") {
    auto a = case_rng(7, 1, 2), b = case_rng(7, 1, 2), c = case_rng(7, 1, 3);
    CHECK(a() == b());
    CHECK(case_rng(7, 1, 2)() != c());
    auto rng = case_rng(1, 0, 0);
    const DensityMatrix rho = random_mixed_state(6, rng);
    CHECK(rho.min_eigenvalue() > 0.0);
    CHECK(purity(rho) < 1.0);
    const Ket even = random_pure_state(7, rng, Parity::even), odd = random_pure_state(7, rng, Parity::odd);
    for (int n = 1; n < 7; n += 2) CHECK(even.amplitudes()(n) == cplx(0.0));
    for (int n = 0; n < 7; n += 2) CHECK(odd.amplitudes()(n) == cplx(0.0));
    // Definite parity has Tr(rho a rho a^H) = 0, hence equality in the bound.
    const MeasureResult r = measure_operator(DensityMatrix::from_ket(odd));
    CHECK(std::abs(r.value - r.mean_n) < 1e-12);
  }

  TEST_CASE("default suite passes") {
    CheckOptions opt;
    opt.ensemble = 200;
    opt.include_route_triangle = false;
    const PropertyReport r = run_property_suite(opt);
    for (const auto& o : r.outcomes) {
      CAPTURE(o.name);
      CAPTURE(o.detail);
      CHECK(o.passed);
      CHECK(o.margin >= 0.0);
    }
    CHECK(r.all_passed());
    CHECK(find(r, "bound").cases == 400);
  }

  TEST_CASE("reports are deterministic for a seed") {
    CheckOptions opt;
    opt.seed = 7;
    opt.ensemble = 100;
    opt.include_route_triangle = false;
    const PropertyReport a = run_property_suite(opt), b = run_property_suite(opt);
    REQUIRE(a.outcomes.size() == b.outcomes.size());
    for (std::size_t k = 0; k < a.outcomes.size(); ++k) {
      CHECK(a.outcomes[k].name == b.outcomes[k].name);
      CHECK(a.outcomes[k].margin == b.outcomes[k].margin);
      CHECK(a.outcomes[k].detail == b.outcomes[k].detail);
    }
  }

  TEST_CASE("an injected sign fault breaks the bound") {
    CheckOptions opt;
    opt.ensemble = 50;
    opt.include_route_triangle = false;
    opt.inject_lindblad_fault = true;
    const PropertyReport r = run_property_suite(opt);
    CHECK_FALSE(r.all_passed());
    CHECK_FALSE(find(r, "bound").passed);
    CHECK(find(r, "bound").margin < 0.0);
    CHECK_FALSE(find(r, "purity-rate").passed);
  }

  TEST_CASE("option checks") {
    CheckOptions opt;
    opt.ensemble = 0;
    CHECK_THROWS_AS(run_property_suite(opt), InvalidArgument);
    opt.ensemble = 10;
    opt.cutoff = 1;
    CHECK_THROWS_AS(run_property_suite(opt), InvalidArgument);
  }
}

#include "macroq/properties.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "macroq/catalog.hpp"
#include "macroq/error.hpp"
#include "macroq/format.hpp"
#include "macroq/kernels.hpp"
#include "macroq/lindblad.hpp"
#include "macroq/measure.hpp"

namespace macroq {

bool PropertyReport::all_passed() const {
  return std::all_of(outcomes.begin(), outcomes.end(), [](const PropertyOutcome& o) { return o.passed; });
}

std::mt19937_64 case_rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(index),
                    static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

DensityMatrix random_mixed_state(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> n01;
  CMatrix g(dim, dim);
  for (int j = 0; j < dim; ++j)
    for (int i = 0; i < dim; ++i) g(i, j) = cplx{n01(rng), n01(rng)};
  return DensityMatrix::normalized(ModeCutoffs{dim}, g * g.adjoint());
}

Ket random_pure_state(int dim, std::mt19937_64& rng, Parity parity) {
  std::normal_distribution<double> n01;
  CVector v(dim);
  for (int i = 0; i < dim; ++i) {
    v(i) = cplx{n01(rng), n01(rng)};
    if ((parity == Parity::even && i % 2) || (parity == Parity::odd && i % 2 == 0)) v(i) = 0.0;
  }
  return Ket::normalized(ModeCutoffs{dim}, std::move(v));
}

namespace {

enum Stream : std::uint64_t { kMixed = 1, kPure, kIdentity, kInvariance, kAdditivity };

struct Sample {
  double I, n, purity, jump;
};

Sample sample(const DensityMatrix& rho, const LindbladModel& model) {
  const auto t = kernels::parallel::operator_traces(rho.matrix(), rho.cutoffs());
  return {lindblad_measure(rho, model), mean_number(rho), purity(rho), t.jump};
}

// Pad a single-mode state into a larger cutoff.
DensityMatrix embed(const DensityMatrix& rho, int cutoff) {
  CMatrix big = CMatrix::Zero(cutoff, cutoff);
  const auto d = rho.matrix().rows();
  big.topLeftCorner(d, d) = rho.matrix();
  return DensityMatrix(ModeCutoffs{cutoff}, std::move(big));
}

PropertyOutcome finish(std::string name, double margin, int cases, std::string detail = {}) {
  return {std::move(name), margin >= 0.0, margin, cases, std::move(detail)};
}

}  // namespace

PropertyReport run_property_suite(const CheckOptions& opt) {
  if (opt.ensemble < 1) throw InvalidArgument("run_property_suite: ensemble must be >= 1");
  if (opt.cutoff < 2) throw InvalidArgument("run_property_suite: cutoff must be >= 2");
  const LindbladModel model{opt.inject_lindblad_fault ? -1.0 : 1.0};
  const int d = opt.cutoff;
  PropertyReport rep;
  // A property whose evaluation throws is reported as failed with the message.
  auto guarded = [&](const char* name, auto&& body) {
    try {
      body();
    } catch (const std::exception& e) {
      rep.outcomes.push_back({name, false, -std::numeric_limits<double>::infinity(), 0, e.what()});
    }
  };

  // Random ensembles: Hilbert-Schmidt mixed states and pure states (half
  // generic, a quarter each of even and odd parity, where <a> = 0).
  const int ne = opt.ensemble;
  std::vector<Sample> mixed(static_cast<std::size_t>(ne)), pure(static_cast<std::size_t>(ne));
#pragma omp parallel for schedule(static)
  for (int k = 0; k < ne; ++k) {
    auto rng = case_rng(opt.seed, kMixed, static_cast<std::uint64_t>(k));
    const DensityMatrix rho = random_mixed_state(d, rng);
    mixed[static_cast<std::size_t>(k)] = sample(rho, model);
    auto prng = case_rng(opt.seed, kPure, static_cast<std::uint64_t>(k));
    const Parity par = k % 4 == 1 ? Parity::even : k % 4 == 3 ? Parity::odd : Parity::any;
    pure[static_cast<std::size_t>(k)] = sample(DensityMatrix::from_ket(random_pure_state(d, prng, par)), model);
  }
  {
    double margin = std::numeric_limits<double>::infinity();
    for (const auto& s : mixed) margin = std::min(margin, s.n + 1e-9 - s.I);
    for (const auto& s : pure) margin = std::min(margin, s.n + 1e-9 - s.I);
    rep.outcomes.push_back(finish("bound", margin, 2 * ne, "I <= <n> + 1e-9"));
  }
  {
    double margin = std::numeric_limits<double>::infinity();
    int cases = 0;
    for (const auto& s : mixed)
      if (s.purity < 1.0 - 1e-6) {
        margin = std::min(margin, s.n - s.I);
        ++cases;
      }
    PropertyOutcome o = finish("strict-bound", margin, cases, "I < <n> whenever purity < 1 - 1e-6");
    o.passed = margin > 0.0;
    rep.outcomes.push_back(o);
  }
  {
    // Equality |I - <n>| <= 1e-12 exactly when Tr(rho a rho a^H) <= 1e-12.
    double margin = std::numeric_limits<double>::infinity();
    int equal_cases = 0, mismatches = 0;
    auto visit = [&](const std::vector<Sample>& v) {
      for (const Sample& s : v) {
        const double gap = std::abs(s.I - s.n);
        const bool eq = gap <= 1e-12, cond = s.jump <= 1e-12;
        if (eq != cond) ++mismatches;
        if (cond) ++equal_cases;
        margin = std::min(margin, cond ? 1e-12 - gap : gap - 1e-12);
      }
    };
    visit(mixed);
    visit(pure);
    PropertyOutcome o = finish("equality-condition", margin, 2 * ne,
                               std::to_string(equal_cases) + " equality cases, " + std::to_string(mismatches) +
                                   " mismatches");
    o.passed = mismatches == 0;
    rep.outcomes.push_back(o);
  }
  {
    double worst = 0.0;
    const int n = 50;
    for (int k = 0; k < n; ++k) {
      auto rng = case_rng(opt.seed, kIdentity, static_cast<std::uint64_t>(k));
      const DensityMatrix rho = random_mixed_state(d, rng);
      worst = std::max(worst, std::abs(lindblad_measure(rho, model) - measure_operator(rho).value));
    }
    rep.outcomes.push_back(finish("lindblad-identity", 1e-12 - worst, n, "|-Tr[rho L(rho)] - I_operator| <= 1e-12"));
  }
  guarded("invariance", [&] {
    const int cutoff = 40;
    std::vector<DensityMatrix> states = {
        DensityMatrix::from_ket(make_scs(1.0, cutoff)),
        DensityMatrix::from_ket(make_coherent({0.5, 0.3}, cutoff)),
        DensityMatrix::from_ket(make_fock(2, cutoff)),
        make_decohered_scs({1.0, 0.3}, cutoff),
    };
    for (int k = 0; k < 4; ++k) {
      auto rng = case_rng(opt.seed, kInvariance, static_cast<std::uint64_t>(k));
      states.push_back(embed(random_mixed_state(d, rng), cutoff));
    }
    double dmax = 0.0, rmax = 0.0;
    for (std::size_t k = 0; k < states.size(); ++k) {
      auto rng = case_rng(opt.seed, kInvariance, 1000 + k);
      std::uniform_real_distribution<double> u(-0.7, 0.7), ang(0.0, 2.0 * std::numbers::pi);
      const cplx beta{u(rng), u(rng)};
      const double theta = ang(rng);
      const double I0 = lindblad_measure(states[k], model);
      dmax = std::max(dmax, std::abs(lindblad_measure(apply_displacement(states[k], std::span(&beta, 1)), model) - I0));
      rmax = std::max(rmax, std::abs(lindblad_measure(apply_rotation(states[k], std::span(&theta, 1)), model) - I0));
    }
    const int n = static_cast<int>(states.size());
    rep.outcomes.push_back(finish("translation-invariance", 1e-5 - dmax, n, "max |dI| = " + format_number(dmax)));
    rep.outcomes.push_back(finish("rotation-invariance", 1e-10 - rmax, n, "max |dI| = " + format_number(rmax)));
  });

  if (opt.include_route_triangle) guarded("route-triangle", [&] {
    struct Case {
      DensityMatrix rho;
      CharFunction chi;
      double cut;
    };
    std::vector<Case> cases = {
        {DensityMatrix::from_ket(make_fock(0, 12)), char_vacuum(), 8.0},
        {DensityMatrix::from_ket(make_fock(1, 12)), char_fock(1), 8.0},
        {DensityMatrix::from_ket(make_coherent(1.0, 30)), char_coherent(1.0), 8.0},
        {DensityMatrix::from_ket(make_scs(1.5, 30)), char_scs(1.5), 8.0},
        {make_decohered_scs({1.5, 0.3}, 30), char_decohered_scs({1.5, 0.3}), 8.0},
        {DensityMatrix::from_ket(make_squeezed_vacuum(1.0, 60)), char_gaussian(GaussianChar::squeezed(1.0)), 24.0},
    };
    double margin = std::numeric_limits<double>::infinity();
    for (const auto& c : cases) {
      const MeasureResult a = measure_operator(c.rho);
      QuadratureOptions q;
      q.radial_cut = c.cut;
      const MeasureResult b = measure_char_quadrature(c.chi, 1, q);
      const MeasureResult g = measure_wigner_grid(wigner_of(c.rho));
      const double spread = std::max({std::abs(a.value - b.value), std::abs(a.value - g.value), std::abs(b.value - g.value)});
      const double allowed = std::max(1e-3, a.err_estimate + b.err_estimate + g.err_estimate);
      margin = std::min(margin, allowed - spread);
    }
    rep.outcomes.push_back(finish("route-triangle", margin, static_cast<int>(cases.size()),
                                  "operator / char-quadrature / wigner-grid pairwise"));
  });

  guarded("purity-rate", [&] {
    EvolutionSpec spec;
    spec.tau_max = 0.2;
    spec.step = 0.002;
    const Trajectory traj = evolve(DensityMatrix::from_ket(make_scs(1.5, 30)), spec, model);
    double worst = 0.0;
    const auto res = purity_rate_residuals(traj);
    for (const auto& r : res) worst = std::max(worst, std::abs(r.residual));
    rep.outcomes.push_back(finish("purity-rate", 1e-5 - worst, static_cast<int>(res.size()), "|dP/dtau + 2I| <= 1e-5"));
  });

  {
    // Additivity holds for pure products (for mixed ones I = I1 P2 + I2 P1).
    const int n = 20;
    double worst = 0.0;
    for (int k = 0; k < n; ++k) {
      auto rng = case_rng(opt.seed, kAdditivity, static_cast<std::uint64_t>(k));
      const Ket a = random_pure_state(5, rng), b = random_pure_state(5, rng);
      const double I1 = lindblad_measure(DensityMatrix::from_ket(a), model);
      const double I2 = lindblad_measure(DensityMatrix::from_ket(b), model);
      const double I12 = lindblad_measure(DensityMatrix::from_ket(tensor(a, b)), model);
      worst = std::max(worst, std::abs(I12 - I1 - I2));
    }
    rep.outcomes.push_back(finish("additivity", 1e-8 - worst, n, "pure two-mode products"));
  }
  return rep;
}

}  // namespace macroq

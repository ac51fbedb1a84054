#include "cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "macroq/catalog.hpp"
#include "macroq/error.hpp"
#include "macroq/format.hpp"
#include "macroq/grid_io.hpp"
#include "macroq/lindblad.hpp"
#include "macroq/measure.hpp"
#include "macroq/product_rank.hpp"
#include "macroq/properties.hpp"
#include "macroq/sweep.hpp"

namespace macroq::cli {

namespace {

using nlohmann::json;

constexpr double kUnset = std::numeric_limits<double>::quiet_NaN();
constexpr int kMaxAutoCutoff = 400;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct StateFlags {
  std::string state;
  int n = -1;
  double alpha = kUnset;
  double alpha_im = 0.0;
  double tau = 0.0;
  double s = kUnset;
  double nbar = kUnset;
  double A = kUnset;
  double B = kUnset;
  double V = kUnset;
  double d = kUnset;
  double epsilon = kUnset;
  int dim = -1;
  int n_modes = -1;
  int cutoff = 0;
};

const std::vector<std::string> kStates = {"vacuum",   "fock",     "coherent",        "scs",   "decohered-scs",
                                          "mixture-scs", "thermal", "squeezed",      "gaussian", "thermal-scs",
                                          "maximally-mixed", "ghz", "noon",          "dur"};

void add_state_flags(CLI::App* cmd, StateFlags& f) {
  cmd->add_option("--state", f.state, "catalog state")->required()->check(CLI::IsMember(kStates));
  cmd->add_option("--n", f.n, "Fock number (fock) or photon number (noon)");
  cmd->add_option("--alpha", f.alpha, "coherent amplitude (real part for coherent)");
  cmd->add_option("--alpha-im", f.alpha_im, "imaginary part of the coherent amplitude");
  cmd->add_option("--tau", f.tau, "decoherence time for decohered-scs");
  cmd->add_option("--s", f.s, "squeezing parameter");
  cmd->add_option("--nbar", f.nbar, "thermal mean photon number");
  cmd->add_option("--A", f.A, "Gaussian chi parameter A");
  cmd->add_option("--B", f.B, "Gaussian chi parameter B");
  cmd->add_option("--V", f.V, "thermal component variance");
  cmd->add_option("--d", f.d, "thermal component displacement");
  cmd->add_option("--epsilon", f.epsilon, "Dur state angle");
  cmd->add_option("--dim", f.dim, "dimension of the maximally mixed state");
  cmd->add_option("--n-modes", f.n_modes, "number of modes (ghz, dur)");
  cmd->add_option("--cutoff", f.cutoff, "Fock cutoff (default: heuristic or MACROQ_DEFAULT_CUTOFF)");
}

double need(double v, const char* flag, const std::string& state) {
  if (std::isnan(v)) throw UsageError("--state " + state + " requires " + flag);
  return v;
}

int need(int v, const char* flag, const std::string& state) {
  if (v < 0) throw UsageError("--state " + state + " requires " + flag);
  return v;
}

// Explicit flag, then MACROQ_DEFAULT_CUTOFF, then the state-specific heuristic.
int pick_cutoff(const StateFlags& f, int heuristic) {
  if (f.cutoff > 0) return f.cutoff;
  if (std::getenv("MACROQ_DEFAULT_CUTOFF")) return default_cutoff(0.0);
  if (heuristic > kMaxAutoCutoff)
    throw DimensionError("state needs a Fock cutoff of about " + std::to_string(heuristic) +
                         "; pass --cutoff explicitly to force a dense computation");
  return heuristic;
}

GaussianChar gaussian_of(const StateFlags& f) {
  if (f.state == "squeezed") return GaussianChar::squeezed(need(f.s, "--s", f.state));
  if (f.state == "thermal") return GaussianChar::thermal(need(f.nbar, "--nbar", f.state));
  return GaussianChar(need(f.A, "--A", f.state), need(f.B, "--B", f.state));
}

struct BuiltState {
  std::optional<DensityMatrix> dense;
  std::optional<ProductRankState> lowrank;
  std::optional<MeasureResult> closed;
  CharFunction chi;  // empty when no analytic form is wired up
  double radial_cut = 8.0;
};

BuiltState build_state(const StateFlags& f, bool need_dense) {
  BuiltState b;
  const std::string& st = f.state;
  auto lazy_dense = [&](auto make) {
    if (need_dense) b.dense = make();
  };
  if (st == "vacuum") {
    lazy_dense([&] { return DensityMatrix::from_ket(make_fock(0, pick_cutoff(f, 4))); });
    b.closed = closed_form_result(0.0, 0.0, 1.0);
    b.chi = char_vacuum();
  } else if (st == "fock") {
    const int n = need(f.n, "--n", st);
    lazy_dense([&] { return DensityMatrix::from_ket(make_fock(n, pick_cutoff(f, n + 2))); });
    b.closed = closed_form_result(n, n, 1.0);
    b.chi = char_fock(n);
  } else if (st == "coherent") {
    const cplx a{need(f.alpha, "--alpha", st), f.alpha_im};
    lazy_dense([&] { return DensityMatrix::from_ket(make_coherent(a, pick_cutoff(f, suggest_cutoff(std::norm(a))))); });
    b.closed = closed_form_result(0.0, std::norm(a), 1.0);
    b.chi = char_coherent(a);
    b.radial_cut = 8.0 + 2.0 * std::abs(a);
  } else if (st == "scs") {
    const double a = need(f.alpha, "--alpha", st);
    lazy_dense([&] { return DensityMatrix::from_ket(make_scs(a, pick_cutoff(f, suggest_cutoff(a * a)))); });
    b.closed = closed_form_result(scs_mean_n(a), scs_mean_n(a), 1.0);
    b.chi = char_scs(a);
    b.radial_cut = 8.0 + 2.0 * a;
  } else if (st == "decohered-scs") {
    const DecoheredSCSParams p(need(f.alpha, "--alpha", st), f.tau);
    const double ta = p.t() * p.alpha;
    lazy_dense([&] { return make_decohered_scs(p, pick_cutoff(f, suggest_cutoff(ta * ta))); });
    b.closed = closed_form_result(closed_form_decohered_scs(p), decohered_scs_mean_n(p), decohered_scs_purity(p));
    b.chi = char_decohered_scs(p);
    b.radial_cut = 8.0 + 2.0 * ta;
  } else if (st == "mixture-scs") {
    const double a = need(f.alpha, "--alpha", st);
    lazy_dense([&] { return make_mixture_scs(a, pick_cutoff(f, suggest_cutoff(a * a))); });
    b.chi = char_mixture_scs(a);
    b.radial_cut = 8.0 + 2.0 * a;
  } else if (st == "thermal" || st == "squeezed" || st == "gaussian") {
    const GaussianChar g = gaussian_of(f);
    if (st == "squeezed") {
      lazy_dense([&] { return DensityMatrix::from_ket(make_squeezed_vacuum(f.s, pick_cutoff(f, suggest_gaussian_cutoff(g)))); });
    } else if (st == "thermal") {
      lazy_dense([&] { return make_thermal(f.nbar, pick_cutoff(f, suggest_gaussian_cutoff(g))); });
    } else {
      lazy_dense([&] { return make_gaussian(g, pick_cutoff(f, suggest_gaussian_cutoff(g))); });
    }
    b.closed = closed_form_result(gaussian_measure(g), g.mean_n(), g.purity());
    b.chi = char_gaussian(g);
    b.radial_cut = 8.0 * std::sqrt(std::max(1.0 / g.A(), 1.0 / g.B()));
  } else if (st == "thermal-scs") {
    const ThermalSCSParams p(need(f.V, "--V", st), need(f.d, "--d", st));
    const double var = 0.5 * (p.V - 1.0);
    lazy_dense([&] {
      const int c = suggest_cutoff(p.d * p.d) + (var > 0.0 ? geometric_cutoff(var / (var + 1.0)) : 0);
      return make_thermal_scs(p, pick_cutoff(f, c));
    });
    b.closed = closed_form_result(thermal_scs_measure(p), thermal_scs_mean_n(p), thermal_scs_purity(p));
    b.chi = char_thermal_scs(p);
    b.radial_cut = 8.0 * std::sqrt(p.V) + 2.0 * p.d;
  } else if (st == "maximally-mixed") {
    const int d = need(f.dim, "--dim", st);
    lazy_dense([&] { return make_maximally_mixed(d); });
    b.closed = closed_form_result(0.0, 0.5 * (d - 1), 1.0 / d);
  } else if (st == "ghz" || st == "noon" || st == "dur") {
    if (st == "ghz") {
      const int N = need(f.n_modes, "--n-modes", st);
      b.lowrank = make_ghz(N);
      b.closed = closed_form_result(0.5 * N, 0.5 * N, 1.0);
    } else if (st == "noon") {
      const int n = need(f.n, "--n", st);
      b.lowrank = make_noon(n);
      b.closed = closed_form_result(n, n, 1.0);
    } else {
      b.lowrank = make_dur_state(need(f.n_modes, "--n-modes", st), need(f.epsilon, "--epsilon", st));
    }
    if (need_dense) b.dense = to_dense(*b.lowrank);
  }
  return b;
}

double num(double v) { return round_sig12(v == 0.0 ? 0.0 : v); }

json result_json(const MeasureResult& r) {
  json j;
  j["value"] = num(r.value);
  j["route"] = std::string(route_name(r.route));
  j["mean_n"] = num(r.mean_n);
  j["purity"] = num(r.purity);
  j["err_estimate"] = num(r.err_estimate);
  j["warnings"] = r.warnings;
  return j;
}

std::ostream& open_out(const std::string& path, std::ofstream& file, std::ostream& fallback) {
  if (path.empty() || path == "-") return fallback;
  file.open(path);
  if (!file) throw IoError("cannot open '" + path + "' for writing");
  return file;
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw UsageError("not a number: '" + tok + "'");
    }
  }
  return out;
}

void error_json(std::ostream& err, const std::string& kind, const std::string& msg) {
  json j;
  j["error"] = {{"kind", kind}, {"message", msg}};
  err << j.dump() << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Interference-based size measure I of bosonic states", "macroq"};
  app.require_subcommand(1);

  StateFlags mflags;
  std::string route = "auto";
  double radial_cut = 0.0;
  int points = 256;
  auto* measure = app.add_subcommand("measure", "compute I for a catalog state (JSON)");
  add_state_flags(measure, mflags);
  measure->add_option("--route", route, "auto, operator, char-quadrature, wigner-grid, closed-form, low-rank")
      ->check(CLI::IsMember({"auto", "operator", "char-quadrature", "wigner-grid", "closed-form", "low-rank"}));
  measure->add_option("--radial-cut", radial_cut, "quadrature radial cut (default: state-dependent)");
  measure->add_option("--points", points, "grid points per axis for the wigner-grid route");

  std::string preset, family, axis, params, sweep_out = "-";
  int samples = 0, sweep_cutoff = 0;
  double amin = kUnset, amax = kUnset;
  bool log_spaced = false, numeric = false;
  auto* sweep = app.add_subcommand("sweep", "sweep I along a parameter (CSV)");
  sweep->add_option("--preset", preset, "fig1a, fig1b, thermal-scs-d0, dur");
  sweep->add_option("--family", family, "scs-decoherence, gaussian-decoherence, thermal-scs, dur");
  sweep->add_option("--params", params, "comma-separated curve parameters");
  sweep->add_option("--axis", axis, "tau, r, V, d or N");
  sweep->add_option("--samples", samples, "points per curve");
  sweep->add_option("--min", amin, "axis minimum");
  sweep->add_option("--max", amax, "axis maximum");
  sweep->add_flag("--log", log_spaced, "log-spaced axis");
  sweep->add_flag("--numeric", numeric, "use a numeric route instead of closed forms");
  sweep->add_option("--cutoff", sweep_cutoff, "Fock cutoff for the numeric route");
  sweep->add_option("--out", sweep_out, "output CSV path ('-' for stdout)");

  std::string grid_path;
  bool strict_norm = false;
  auto* score = app.add_subcommand("score-wigner", "compute I from a WIGNER-GRID v1 file (JSON)");
  score->add_option("path", grid_path, "grid file")->required();
  score->add_flag("--strict-normalization", strict_norm, "fail instead of warning on a badly normalized grid");

  CheckOptions copt;
  bool skip_routes = false;
  auto* check = app.add_subcommand("check", "run the seeded property suite");
  check->add_option("--seed", copt.seed, "random seed");
  check->add_option("--ensemble", copt.ensemble, "random states per ensemble")->check(CLI::PositiveNumber);
  check->add_option("--cutoff", copt.cutoff, "cutoff of the random states");
  check->add_flag("--inject-fault", copt.inject_lindblad_fault, "flip the sign of the Lindblad jump term");
  check->add_flag("--skip-route-triangle", skip_routes, "skip the (slow) route agreement property");

  StateFlags eflags;
  std::string emit_out = "-";
  double half_width = 0.0;
  int emit_points = 256;
  auto* emit = app.add_subcommand("emit-wigner", "write a catalog state's Wigner grid");
  add_state_flags(emit, eflags);
  emit->add_option("--out", emit_out, "output path ('-' for stdout)");
  emit->add_option("--half-width", half_width, "grid half-width (default: suggested)");
  emit->add_option("--points", emit_points, "points per axis");

  StateFlags vflags;
  EvolutionSpec espec;
  std::string evolve_out = "-";
  auto* evolve_cmd = app.add_subcommand("evolve", "amplitude-damping trajectory (CSV tau,I,purity,mean_n)");
  add_state_flags(evolve_cmd, vflags);
  evolve_cmd->add_option("--tau-max", espec.tau_max, "final time")->required();
  evolve_cmd->add_option("--step", espec.step, "RK4 step");
  evolve_cmd->add_option("--record-every", espec.record_every, "steps between records");
  evolve_cmd->add_option("--out", evolve_out, "output CSV path ('-' for stdout)");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << e.what() << '\n' << "Run with --help for usage.\n";
    return 2;
  }

  try {
    if (*measure) {
      const bool dense_route = route == "operator" || route == "wigner-grid";
      const bool product = mflags.state == "ghz" || mflags.state == "noon" || mflags.state == "dur";
      BuiltState b = build_state(mflags, dense_route || (route == "auto" && !product));
      MeasureResult r;
      if (route == "auto") {
        r = product ? measure_lowrank(*b.lowrank) : measure_operator(*b.dense);
      } else if (route == "operator") {
        r = measure_operator(*b.dense);
      } else if (route == "low-rank") {
        if (!b.lowrank) throw UsageError("--route low-rank needs a product state (ghz, noon, dur)");
        r = measure_lowrank(*b.lowrank);
      } else if (route == "closed-form") {
        if (!b.closed) throw UsageError("no closed form for --state " + mflags.state);
        r = *b.closed;
      } else if (route == "char-quadrature") {
        if (!b.chi) throw UsageError("no analytic characteristic function for --state " + mflags.state);
        QuadratureOptions q;
        q.radial_cut = radial_cut > 0.0 ? radial_cut : b.radial_cut;
        r = measure_char_quadrature(b.chi, 1, q);
      } else {
        r = measure_wigner_grid(wigner_of(*b.dense, points));
      }
      out << result_json(r).dump() << '\n';
      return 0;
    }

    if (*sweep) {
      SweepSpec spec;
      if (!preset.empty()) {
        spec = sweep_preset(preset);
      } else {
        if (family.empty() || params.empty() || axis.empty())
          throw UsageError("sweep needs --preset or all of --family, --params and --axis");
        spec.family = parse_family(family);
        spec.axis = parse_axis(axis);
      }
      if (!params.empty()) spec.params = parse_list(params);
      if (!axis.empty()) spec.axis = parse_axis(axis);
      if (samples) spec.samples = samples;
      if (!std::isnan(amin)) spec.axis_min = amin;
      if (!std::isnan(amax)) spec.axis_max = amax;
      if (log_spaced) spec.log_spaced = true;
      spec.numeric = numeric;
      spec.cutoff = sweep_cutoff;
      const auto rows = run_sweep(spec);
      std::ofstream file;
      write_sweep_csv(open_out(sweep_out, file, out), rows);
      return 0;
    }

    if (*score) {
      LoadOptions lo;
      lo.strict_normalization = strict_norm;
      const LoadedWigner g = load_wigner(grid_path, lo);
      GridCheckOptions go;
      go.strict_normalization = strict_norm;
      MeasureResult r = measure_wigner_grid(g.grid, go);
      r.warnings.insert(r.warnings.begin(), g.warnings.begin(), g.warnings.end());
      out << result_json(r).dump() << '\n';
      return 0;
    }

    if (*check) {
      copt.include_route_triangle = !skip_routes;
      const PropertyReport rep = run_property_suite(copt);
      for (const auto& o : rep.outcomes)
        out << (o.passed ? "PASS " : "FAIL ") << o.name << " margin=" << format_number(o.margin)
            << " cases=" << o.cases << (o.detail.empty() ? "" : " (" + o.detail + ")") << '\n';
      out << (rep.all_passed() ? "all properties passed" : "property failures") << " (seed " << copt.seed
          << ", ensemble " << copt.ensemble << ")\n";
      return rep.all_passed() ? 0 : 1;
    }

    if (*emit) {
      BuiltState b = build_state(eflags, true);
      if (b.dense->cutoffs().modes() != 1) throw UsageError("emit-wigner needs a single-mode state");
      const double hw = half_width > 0.0 ? half_width : suggest_half_width(*b.dense);
      const Axis ax = symmetric_axis(hw, emit_points);
      WignerGrid g = wigner_of(*b.dense, ax, ax);
      g.meta = {{"source", "macroq emit-wigner"}, {"state", eflags.state}};
      std::ofstream file;
      write_wigner(open_out(emit_out, file, out), g);
      return 0;
    }

    if (*evolve_cmd) {
      BuiltState b = build_state(vflags, true);
      const Trajectory t = evolve(*b.dense, espec);
      std::ofstream file;
      std::ostream& os = open_out(evolve_out, file, out);
      os << "tau,I,purity,mean_n\n";
      for (const auto& p : t.points)
        os << format_number(p.tau) << ',' << format_number(p.I) << ',' << format_number(p.purity) << ','
           << format_number(p.mean_n) << '\n';
      return 0;
    }
  } catch (const UsageError& e) {
    error_json(err, "usage", e.what());
    return 2;
  } catch (const InvalidArgument& e) {
    error_json(err, e.kind(), e.what());
    return 2;
  } catch (const Error& e) {
    error_json(err, e.kind(), e.what());
    return 1;
  } catch (const std::exception& e) {
    error_json(err, "internal", e.what());
    return 1;
  }
  return 2;
}

}  // namespace macroq::cli

#include "macroq/sweep.hpp"

#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <ostream>

#include "macroq/catalog.hpp"
#include "macroq/error.hpp"
#include "macroq/format.hpp"
#include "macroq/measure.hpp"
#include "macroq/product_rank.hpp"

namespace macroq {

double tau_from_r(double r) {
  if (!(r >= 0.0) || r > 1.0) throw InvalidArgument("tau_from_r: r must be in [0, 1]");
  if (r == 1.0) return std::numeric_limits<double>::infinity();
  return -std::log1p(-r * r);
}

Family parse_family(std::string_view s) {
  if (s == "scs-decoherence") return Family::scs_decoherence;
  if (s == "gaussian-decoherence") return Family::gaussian_decoherence;
  if (s == "thermal-scs") return Family::thermal_scs;
  if (s == "dur") return Family::dur;
  throw InvalidArgument("unknown sweep family '" + std::string(s) + "'");
}

SweepAxis parse_axis(std::string_view s) {
  if (s == "tau") return SweepAxis::tau;
  if (s == "r") return SweepAxis::r;
  if (s == "V") return SweepAxis::V;
  if (s == "d") return SweepAxis::d;
  if (s == "N") return SweepAxis::N;
  throw InvalidArgument("unknown sweep axis '" + std::string(s) + "'");
}

std::string_view family_name(Family f) {
  switch (f) {
    case Family::scs_decoherence: return "scs-decoherence";
    case Family::gaussian_decoherence: return "gaussian-decoherence";
    case Family::thermal_scs: return "thermal-scs";
    case Family::dur: return "dur";
  }
  return "?";
}

std::string_view axis_name(SweepAxis a) {
  switch (a) {
    case SweepAxis::tau: return "tau";
    case SweepAxis::r: return "r";
    case SweepAxis::V: return "V";
    case SweepAxis::d: return "d";
    case SweepAxis::N: return "N";
  }
  return "?";
}

void SweepSpec::validate() const {
  auto fail = [](const std::string& m) { throw InvalidArgument("sweep: " + m); };
  if (samples < 2) fail("samples must be >= 2");
  if (params.empty()) fail("at least one parameter value is required");
  if (!(axis_max >= axis_min)) fail("axis max must be >= axis min");
  if (log_spaced && !(axis_min > 0.0)) fail("log spacing needs a positive axis minimum");
  switch (family) {
    case Family::scs_decoherence:
    case Family::gaussian_decoherence:
      if (axis != SweepAxis::tau && axis != SweepAxis::r) fail("decoherence sweeps run along tau or r");
      if (axis == SweepAxis::r && (axis_min < 0.0 || axis_max > 1.0)) fail("r must lie in [0, 1]");
      if (axis == SweepAxis::tau && axis_min < 0.0) fail("tau must be >= 0");
      if (family == Family::scs_decoherence)
        for (double a : params)
          if (!(a > 0.0)) fail("alpha must be > 0");
      break;
    case Family::thermal_scs:
      if (axis == SweepAxis::V) {
        if (axis_min < 1.0) fail("V must be >= 1");
        for (double d : params)
          if (!(d >= 0.0)) fail("d must be >= 0");
      } else if (axis == SweepAxis::d) {
        if (axis_min < 0.0) fail("d must be >= 0");
        for (double V : params)
          if (!(V >= 1.0)) fail("V must be >= 1");
      } else {
        fail("thermal-scs sweeps run along V or d");
      }
      break;
    case Family::dur:
      if (axis != SweepAxis::N) fail("dur sweeps run along N");
      if (axis_min < 1.0) fail("N must be >= 1");
      for (double e : params)
        if (!(e > 0.0) || e > 0.5 * std::acos(-1.0)) fail("epsilon must be in (0, pi/2]");
      break;
  }
}

SweepSpec sweep_preset(std::string_view name) {
  SweepSpec s;
  if (name == "fig1a") {
    s.family = Family::scs_decoherence;
    s.params = {2.0, 4.0, 6.0, 27.3};
  } else if (name == "fig1b") {
    s.family = Family::gaussian_decoherence;
    s.params = {1.5, 2.1, 2.5, 7.0};
  } else if (name == "thermal-scs-d0") {
    s.family = Family::thermal_scs;
    s.params = {0.0};
    s.axis = SweepAxis::V;
    s.axis_min = 1.0;
    s.axis_max = 1e4;
    s.log_spaced = true;
  } else if (name == "dur") {
    s.family = Family::dur;
    s.params = {0.1};
    s.axis = SweepAxis::N;
    s.axis_min = 10.0;
    s.axis_max = 1000.0;
    s.samples = 41;
    s.log_spaced = true;
  } else {
    throw InvalidArgument("unknown sweep preset '" + std::string(name) + "'");
  }
  return s;
}

std::vector<std::string> sweep_preset_names() { return {"fig1a", "fig1b", "thermal-scs-d0", "dur"}; }

namespace {

double axis_point(const SweepSpec& s, int k) {
  if (k == s.samples - 1) return s.axis_max;
  const double f = static_cast<double>(k) / (s.samples - 1);
  if (s.log_spaced) return s.axis_min * std::pow(s.axis_max / s.axis_min, f);
  return s.axis_min + f * (s.axis_max - s.axis_min);
}

void fill(SweepRow& row, const MeasureResult& r) {
  row.I = r.value;
  row.mean_n = r.mean_n;
  row.purity = r.purity;
}

SweepRow evaluate(const SweepSpec& s, double param, double x) {
  SweepRow row{param, x, 0, 0, 0};
  switch (s.family) {
    case Family::scs_decoherence: {
      const double tau = s.axis == SweepAxis::r ? tau_from_r(x) : x;
      const DecoheredSCSParams p(param, tau);
      if (s.numeric) {
        const double ta = p.t() * param;
        const int cutoff = s.cutoff ? s.cutoff : default_cutoff(ta * ta);
        fill(row, measure_operator(make_decohered_scs(p, cutoff)));
      } else {
        row.I = closed_form_decohered_scs(p);
        row.mean_n = decohered_scs_mean_n(p);
        row.purity = decohered_scs_purity(p);
      }
      break;
    }
    case Family::gaussian_decoherence: {
      const double tau = s.axis == SweepAxis::r ? tau_from_r(x) : x;
      const GaussianChar g = gaussian_decohere(GaussianChar::squeezed(param), tau);
      if (s.numeric) {
        const int cutoff = s.cutoff                              ? s.cutoff
                           : std::getenv("MACROQ_DEFAULT_CUTOFF") ? default_cutoff(0.0)
                                                                  : suggest_gaussian_cutoff(g);
        if (cutoff > 400) throw DimensionError("sweep: numeric Gaussian route needs cutoff " + std::to_string(cutoff));
        fill(row, measure_operator(make_gaussian(g, cutoff)));
      } else {
        row.I = gaussian_measure(g);
        row.mean_n = g.mean_n();
        row.purity = g.purity();
      }
      break;
    }
    case Family::thermal_scs: {
      const ThermalSCSParams p = s.axis == SweepAxis::V ? ThermalSCSParams(x, param) : ThermalSCSParams(param, x);
      if (s.numeric) {
        QuadratureOptions q;
        q.radial_cut = 8.0 * std::sqrt(p.V) + 2.0 * p.d;
        fill(row, measure_char_quadrature(char_thermal_scs(p), 1, q));
      } else {
        row.I = thermal_scs_measure(p);
        row.mean_n = thermal_scs_mean_n(p);
        row.purity = thermal_scs_purity(p);
      }
      break;
    }
    case Family::dur: {
      const int N = static_cast<int>(std::lround(x));
      row.axis_value = N;
      fill(row, measure_lowrank(make_dur_state(N, param)));
      break;
    }
  }
  return row;
}

}  // namespace

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
  spec.validate();
  const int np = static_cast<int>(spec.params.size());
  const int total = np * spec.samples;
  std::vector<SweepRow> rows(static_cast<std::size_t>(total));
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
  for (int k = 0; k < total; ++k) {
    try {
      rows[static_cast<std::size_t>(k)] =
          evaluate(spec, spec.params[static_cast<std::size_t>(k / spec.samples)], axis_point(spec, k % spec.samples));
    } catch (...) {
#pragma omp critical(macroq_sweep_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return rows;
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  os << "param,axis_value,I,mean_n,purity\n";
  for (const auto& r : rows)
    os << format_number(r.param) << ',' << format_number(r.axis_value) << ',' << format_number(r.I) << ','
       << format_number(r.mean_n) << ',' << format_number(r.purity) << '\n';
}

}  // namespace macroq

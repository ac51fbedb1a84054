#pragma once

// Parameter sweeps of I along decoherence time or state parameters, written
// as CSV `param,axis_value,I,mean_n,purity`.

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace macroq {

enum class Family { scs_decoherence, gaussian_decoherence, thermal_scs, dur };
/// r = sqrt(1 - e^{-tau}) is the normalized time; r = 1 means tau = infinity.
enum class SweepAxis { tau, r, V, d, N };

struct SweepSpec {
  Family family = Family::scs_decoherence;
  /// One curve per entry: alpha (scs), s (gaussian), d for axis V or V for
  /// axis d (thermal-scs), epsilon (dur).
  std::vector<double> params;
  SweepAxis axis = SweepAxis::r;
  int samples = 101;
  double axis_min = 0.0;
  double axis_max = 1.0;
  bool log_spaced = false;
  /// Closed forms unless set; then the dense operator route (scs, gaussian)
  /// or the characteristic-function quadrature (thermal-scs). The dur family
  /// always uses the low-rank engine.
  bool numeric = false;
  /// Fock cutoff for the numeric dense route; 0 picks default_cutoff.
  int cutoff = 0;

  /// Throws InvalidArgument when the spec is outside the family's domain.
  void validate() const;
};

struct SweepRow {
  double param = 0.0;
  double axis_value = 0.0;
  double I = 0.0;
  double mean_n = 0.0;
  double purity = 0.0;
};

/// fig1a: alpha in {2, 4, 6, 27.3} against r (closed form only at 27.3,
/// where <n> ~ 745 is beyond dense simulation). fig1b: s in {1.5, 2.1, 2.5, 7}
/// against r. thermal-scs-d0: d = 0, V log-spaced over [1, 1e4]. dur:
/// epsilon = 0.1, N log-spaced over [10, 1000].
SweepSpec sweep_preset(std::string_view name);
std::vector<std::string> sweep_preset_names();

Family parse_family(std::string_view s);
SweepAxis parse_axis(std::string_view s);
std::string_view family_name(Family f);
std::string_view axis_name(SweepAxis a);

/// Points are evaluated in parallel; rows come back ordered by (param, axis).
std::vector<SweepRow> run_sweep(const SweepSpec& spec);
void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows);

/// tau for a normalized time r in [0, 1].
double tau_from_r(double r);

}  // namespace macroq

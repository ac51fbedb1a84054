#pragma once

// Amplitude damping into a vacuum environment:
//   d rho / d tau = L(rho) = sum_m a_m rho a_m^H - (1/2){a_m^H a_m, rho}.

#include <optional>
#include <vector>

#include "macroq/catalog.hpp"
#include "macroq/fock.hpp"

namespace macroq {

/// `jump_sign` multiplies the a rho a^H term; -1 is a deliberately broken
/// model used to check that the property suite notices.
struct LindbladModel {
  double jump_sign = 1.0;
};

CMatrix lindblad_rhs(const DensityMatrix& rho, const LindbladModel& model = {});

/// -Tr[rho L(rho)].
double lindblad_measure(const DensityMatrix& rho, const LindbladModel& model = {});

struct EvolutionSpec {
  double tau_max = 1.0;
  double step = 0.01;
  int record_every = 1;
  bool keep_states = false;
  double max_step = 0.05;
  bool check_positivity = true;
  double positivity_floor = -1e-6;
  /// Allowed |Tr rho - 1| accumulated between record points, per unit tau.
  double trace_drift_rate = 1e-8;
};

struct TrajectoryPoint {
  double tau = 0.0;
  double I = 0.0;
  double purity = 0.0;
  double mean_n = 0.0;
};

struct Trajectory {
  std::vector<TrajectoryPoint> points;
  std::vector<DensityMatrix> states;  // filled when keep_states is set
  double max_trace_drift_rate = 0.0;
};

/// Classical RK4 with the uniform step tau_max / ceil(tau_max / step). The
/// state is re-Hermitized and renormalized at record points only (every
/// `record_every` steps, plus the final time). Throws StepSizeError when an
/// eigenvalue falls below `positivity_floor` or the trace drifts faster than
/// `trace_drift_rate`.
Trajectory evolve(const DensityMatrix& rho0, const EvolutionSpec& spec, const LindbladModel& model = {});

struct RateResidual {
  double tau = 0.0;
  double dP = 0.0;  // finite-difference dP/dtau
  double I = 0.0;
  double residual = 0.0;  // dP + 2I
};

/// dP/dtau + 2I at interior record points from a five-point central
/// difference of the purity (the first and last two points are skipped).
/// Requires uniform record spacing.
std::vector<RateResidual> purity_rate_residuals(const Trajectory& traj);

/// Centred second moments: A = Var(P), B = Var(X) with X = a + a^H,
/// P = i(a^H - a). Exact for Gaussian states with unrotated axes.
GaussianChar fit_gaussian_char(const DensityMatrix& rho);

}  // namespace macroq

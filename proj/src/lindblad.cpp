#include "macroq/lindblad.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "macroq/error.hpp"
#include "macroq/format.hpp"
#include "macroq/kernels.hpp"

namespace macroq {

CMatrix lindblad_rhs(const DensityMatrix& rho, const LindbladModel& model) {
  return kernels::parallel::lindblad_rhs(rho.matrix(), rho.cutoffs(), model.jump_sign);
}

double lindblad_measure(const DensityMatrix& rho, const LindbladModel& model) {
  // Tr[rho X] = sum conj(rho_ij) X_ij for Hermitian rho.
  return -rho.matrix().cwiseProduct(lindblad_rhs(rho, model).conjugate()).sum().real();
}

namespace {

TrajectoryPoint observe(double tau, const DensityMatrix& rho, const LindbladModel& model) {
  TrajectoryPoint p;
  p.tau = tau;
  if (model.jump_sign == 1.0) {
    const auto t = kernels::parallel::operator_traces(rho.matrix(), rho.cutoffs());
    p.I = t.rho2_number - t.jump;
  } else {
    p.I = lindblad_measure(rho, model);
  }
  p.purity = purity(rho);
  p.mean_n = mean_number(rho);
  return p;
}

}  // namespace

Trajectory evolve(const DensityMatrix& rho0, const EvolutionSpec& spec, const LindbladModel& model) {
  if (!(spec.tau_max >= 0.0)) throw InvalidArgument("evolve: tau_max must be >= 0");
  if (!(spec.step > 0.0)) throw InvalidArgument("evolve: step must be > 0");
  if (spec.step > spec.max_step)
    throw InvalidArgument("evolve: step " + format_number(spec.step) + " exceeds the cap " + format_number(spec.max_step));
  if (spec.record_every < 1) throw InvalidArgument("evolve: record_every must be >= 1");

  const ModeCutoffs& c = rho0.cutoffs();
  const long steps = spec.tau_max == 0.0 ? 0 : static_cast<long>(std::ceil(spec.tau_max / spec.step - 1e-9));
  const double h = steps ? spec.tau_max / static_cast<double>(steps) : 0.0;
  auto f = [&](const CMatrix& x) { return kernels::parallel::lindblad_rhs(x, c, model.jump_sign); };

  Trajectory traj;
  traj.points.push_back(observe(0.0, rho0, model));
  if (spec.keep_states) traj.states.push_back(rho0);

  CMatrix rho = rho0.matrix();
  double last_record = 0.0;
  for (long k = 1; k <= steps; ++k) {
    const CMatrix k1 = f(rho);
    const CMatrix k2 = f(rho + 0.5 * h * k1);
    const CMatrix k3 = f(rho + 0.5 * h * k2);
    const CMatrix k4 = f(rho + h * k3);
    rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

    if (k % spec.record_every != 0 && k != steps) continue;
    const double tau = static_cast<double>(k) * h;
    const double drift = std::abs(rho.trace().real() - 1.0) / (tau - last_record);
    traj.max_trace_drift_rate = std::max(traj.max_trace_drift_rate, drift);
    if (drift > spec.trace_drift_rate)
      throw StepSizeError("evolve: trace drift " + format_number(drift) + " per unit tau at tau = " +
                          format_number(tau));
    DensityMatrix state = DensityMatrix::normalized(c, rho);
    if (spec.check_positivity) {
      const double lo = state.min_eigenvalue();
      if (lo < spec.positivity_floor)
        throw StepSizeError("evolve: eigenvalue " + format_number(lo) + " at tau = " + format_number(tau) +
                            "; reduce the step");
    }
    rho = state.matrix();
    last_record = tau;
    traj.points.push_back(observe(tau, state, model));
    if (spec.keep_states) traj.states.push_back(std::move(state));
  }
  return traj;
}

std::vector<RateResidual> purity_rate_residuals(const Trajectory& traj) {
  const auto& p = traj.points;
  std::vector<RateResidual> out;
  if (p.size() < 5) return out;
  const double d = p[1].tau - p[0].tau;
  for (std::size_t k = 1; k < p.size(); ++k)
    if (std::abs((p[k].tau - p[k - 1].tau) - d) > 1e-9 * std::max(1.0, d))
      throw InvalidArgument("purity_rate_residuals: record spacing is not uniform");
  for (std::size_t k = 2; k + 2 < p.size(); ++k) {
    const double dP = (-p[k + 2].purity + 8.0 * p[k + 1].purity - 8.0 * p[k - 1].purity + p[k - 2].purity) / (12.0 * d);
    out.push_back({p[k].tau, dP, p[k].I, dP + 2.0 * p[k].I});
  }
  return out;
}

GaussianChar fit_gaussian_char(const DensityMatrix& rho) {
  if (rho.cutoffs().modes() != 1) throw DimensionError("fit_gaussian_char: single-mode state required");
  const CMatrix a = annihilation_op(rho.cutoffs(), 0);
  const CMatrix& r = rho.matrix();
  auto expect = [&](const CMatrix& op) { return (r * op).trace(); };
  const cplx ma = expect(a);
  const cplx ma2 = expect(a * a);
  const double n = mean_number(rho);
  // <X^2> = 2 Re<a^2> + 2n + 1, <X> = 2 Re<a>; <P^2> = -2 Re<a^2> + 2n + 1, <P> = 2 Im<a>.
  const double B = 2.0 * ma2.real() + 2.0 * n + 1.0 - 4.0 * ma.real() * ma.real();
  const double A = -2.0 * ma2.real() + 2.0 * n + 1.0 - 4.0 * ma.imag() * ma.imag();
  return {A, B};
}

}  // namespace macroq

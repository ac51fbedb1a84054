#include "macroq/phase_space.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <string>
#include <vector>

#include <fftw3.h>

#include "macroq/error.hpp"
#include "macroq/format.hpp"
#include "macroq/kernels.hpp"

namespace macroq {

namespace {

void check_axes(const Axis& a, const Axis& b, Eigen::Index rows, Eigen::Index cols, const char* what) {
  if (a.n < 16 || b.n < 16) throw DimensionError(std::string(what) + ": axes need at least 16 points");
  if (!(a.max > a.min) || !(b.max > b.min)) throw DimensionError(std::string(what) + ": axis max must exceed min");
  if (rows != a.n || cols != b.n) throw DimensionError(std::string(what) + ": values do not match the axes");
}

void require_single_mode(const DensityMatrix& rho, const char* what) {
  if (rho.cutoffs().modes() != 1) throw DimensionError(std::string(what) + ": single-mode state required");
}

// FFTW's planner is not re-entrant.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

// Forward DFT (sign -1) of a row-major complex buffer of shape n0 x n1 (n1 = 1 for 1D).
void fft_forward(std::vector<cplx>& buf, int n0, int n1) {
  auto* data = reinterpret_cast<fftw_complex*>(buf.data());
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan = n1 == 1 ? fftw_plan_dft_1d(n0, data, data, FFTW_FORWARD, FFTW_ESTIMATE)
                   : fftw_plan_dft_2d(n0, n1, data, data, FFTW_FORWARD, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  std::lock_guard<std::mutex> lock(planner_mutex());
  fftw_destroy_plan(plan);
}

int wrap(int q, int n) { return ((q % n) + n) % n; }

}  // namespace

double WignerGrid::integral() const { return values.sum() * x.spacing() * p.spacing(); }

void WignerGrid::validate() const { check_axes(x, p, values.rows(), values.cols(), "WignerGrid"); }

void CharGrid::validate() const { check_axes(xr, xi, values.rows(), values.cols(), "CharGrid"); }

double suggest_half_width(const DensityMatrix& rho) {
  return std::max(5.0, 6.5 * std::sqrt(mean_number(rho) + 0.5));
}

WignerGrid wigner_of(const DensityMatrix& rho, const Axis& x, const Axis& p, double coverage_tol) {
  require_single_mode(rho, "wigner_of");
  WignerGrid w{x, p, kernels::parallel::wigner_grid(rho.matrix(), x, p), {}};
  w.validate();
  const double total = w.integral();
  if (std::abs(total - 1.0) > coverage_tol)
    throw CoverageError("wigner_of: grid holds " + format_number(total) + " of the Wigner mass; widen the axes");
  return w;
}

WignerGrid wigner_of(const DensityMatrix& rho, int points) {
  const Axis a = symmetric_axis(suggest_half_width(rho), points);
  return wigner_of(rho, a, a);
}

CharGrid char_of(const DensityMatrix& rho, const Axis& xr, const Axis& xi) {
  require_single_mode(rho, "char_of");
  CharGrid g{xr, xi, kernels::parallel::char_grid(rho.matrix(), xr, xi), {}};
  return g;
}

CharGrid char_from_wigner(const WignerGrid& w) {
  w.validate();
  const int nx = w.x.n, np = w.p.n;
  const double dx = w.x.spacing(), dp = w.p.spacing();
  std::vector<cplx> buf(static_cast<std::size_t>(nx) * np);
  for (int j = 0; j < nx; ++j)
    for (int k = 0; k < np; ++k) buf[static_cast<std::size_t>(j) * np + k] = w.values(j, k);
  fft_forward(buf, nx, np);

  // chi(q', q) = dx dp e^{2i(x0 xi_i - p0 xi_r)} F(-q, q') with xi_r from q' (p index), xi_i from q (x index).
  const double dr = std::numbers::pi / (np * dp), di = std::numbers::pi / (nx * dx);
  const int qr0 = -np / 2, qi0 = -nx / 2;
  CharGrid out;
  out.xr = {qr0 * dr, (qr0 + np - 1) * dr, np};
  out.xi = {qi0 * di, (qi0 + nx - 1) * di, nx};
  out.values.resize(np, nx);
  for (int a = 0; a < np; ++a)
    for (int b = 0; b < nx; ++b) {
      const int qr = qr0 + a, qi = qi0 + b;
      const double xr = qr * dr, xi = qi * di;
      const cplx f = buf[static_cast<std::size_t>(wrap(-qi, nx)) * np + wrap(qr, np)];
      out.values(a, b) = dx * dp * std::polar(1.0, 2.0 * (w.x.min * xi - w.p.min * xr)) * f;
    }
  return out;
}

double fringe_frequency(const WignerGrid& w, double x0) {
  w.validate();
  int col = 0;
  for (int i = 1; i < w.x.n; ++i)
    if (std::abs(w.x.at(i) - x0) < std::abs(w.x.at(col) - x0)) col = i;
  const int n = 2 * w.p.n;
  std::vector<cplx> buf(static_cast<std::size_t>(n), 0.0);
  for (int k = 0; k < w.p.n; ++k) buf[static_cast<std::size_t>(k)] = w.values(col, k);
  fft_forward(buf, n, 1);

  // Largest local maximum away from zero frequency, so the tail of the DC lobe is skipped.
  auto mag = [&](int k) { return std::abs(buf[static_cast<std::size_t>(k)]); };
  int best = -1;
  for (int k = 1; k + 1 < n / 2; ++k)
    if (mag(k) >= mag(k - 1) && mag(k) >= mag(k + 1) && (best < 0 || mag(k) > mag(best))) best = k;
  if (best < 0) throw InvalidArgument("fringe_frequency: no oscillation found along p");
  double shift = 0.0;
  if (best + 1 < n / 2) {
    const double a = std::abs(buf[static_cast<std::size_t>(best - 1)]);
    const double b = std::abs(buf[static_cast<std::size_t>(best)]);
    const double c = std::abs(buf[static_cast<std::size_t>(best + 1)]);
    const double den = a - 2.0 * b + c;
    if (den != 0.0) shift = 0.5 * (a - c) / den;
  }
  return 2.0 * std::numbers::pi * (best + shift) / (n * w.p.spacing());
}

}  // namespace macroq

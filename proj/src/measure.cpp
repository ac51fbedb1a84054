#include "macroq/measure.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "macroq/error.hpp"
#include "macroq/format.hpp"
#include "macroq/kernels.hpp"

namespace macroq {

std::string_view route_name(Route r) {
  switch (r) {
    case Route::operator_trace: return "operator";
    case Route::char_quadrature: return "char-quadrature";
    case Route::wigner_grid: return "wigner-grid";
    case Route::closed_form: return "closed-form";
    case Route::low_rank: return "low-rank";
  }
  return "unknown";
}

namespace {

double band_population(const DensityMatrix& rho, int mode, int lo, int hi) {
  const auto& c = rho.cutoffs();
  double p = 0.0;
  for (std::size_t j = 0; j < c.total(); ++j) {
    int n = c.level(j, mode);
    if (n >= lo && n <= hi) p += rho.matrix()(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j)).real();
  }
  return p;
}

}  // namespace

MeasureResult measure_operator(const DensityMatrix& rho, const Tolerances& tol) {
  const auto t = kernels::parallel::operator_traces(rho.matrix(), rho.cutoffs());
  MeasureResult r;
  r.route = Route::operator_trace;
  r.value = t.rho2_number - t.jump;
  r.mean_n = mean_number(rho);
  r.purity = purity(rho);
  const auto& c = rho.cutoffs();
  for (int m = 0; m < c.modes(); ++m) {
    const int d = c.dim(m);
    if (d < 2) continue;
    const double top = top_level_population(rho, m);
    if (top <= tol.top_level_population) continue;
    // Geometric tail with ratio q per two levels, only when the populations decay.
    const double below = d >= 4 ? band_population(rho, m, d - 4, d - 3) : 0.0;
    const double q = below > top ? std::min(top / below, 0.99) : 0.0;
    // Missing mass top q/(1-q), sitting on average 2q/(1-q) levels above the cutoff.
    r.err_estimate += (d + 2.0 * q / (1.0 - q)) * top * std::max(1.0, q / (1.0 - q));
    r.warnings.push_back("mode " + std::to_string(m) + ": top-level population " + format_number(top) +
                         " exceeds " + format_number(tol.top_level_population) + "; raise the cutoff");
  }
  return r;
}

namespace {


double spectral_measure(const WignerGrid& w) {
  const CharGrid chi = char_from_wigner(w);
  const double dr = chi.xr.spacing(), di = chi.xi.spacing();
  double s = 0.0;
  for (int i = 0; i < chi.xr.n; ++i)
    for (int j = 0; j < chi.xi.n; ++j) {
      const double r2 = chi.xr.at(i) * chi.xr.at(i) + chi.xi.at(j) * chi.xi.at(j);
      s += (r2 - 1.0) * std::norm(chi.values(i, j));
    }
  return s * dr * di / (2.0 * std::numbers::pi);
}

WignerGrid every_second(const WignerGrid& w) {
  const int nx = (w.x.n + 1) / 2, np = (w.p.n + 1) / 2;
  WignerGrid h;
  h.x = {w.x.min, w.x.at(2 * (nx - 1)), nx};
  h.p = {w.p.min, w.p.at(2 * (np - 1)), np};
  h.values.resize(nx, np);
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < np; ++j) h.values(i, j) = w.values(2 * i, 2 * j);
  return h;
}

}  // namespace

MeasureResult measure_wigner_grid(const WignerGrid& grid, const GridCheckOptions& opt) {
  grid.validate();
  const Eigen::MatrixXd& W = grid.values;
  const double peak = W.cwiseAbs().maxCoeff();
  const Eigen::Index nx = W.rows(), np = W.cols();
  const double edge = std::max({W.row(0).cwiseAbs().maxCoeff(), W.row(nx - 1).cwiseAbs().maxCoeff(),
                                W.col(0).cwiseAbs().maxCoeff(), W.col(np - 1).cwiseAbs().maxCoeff()});
  if (!(peak > 0.0)) throw NormalizationError("measure_wigner_grid: grid is identically zero");
  if (edge > opt.boundary_leak * peak)
    throw CoverageError("measure_wigner_grid: boundary holds " + format_number(edge / peak) +
                        " of the peak; widen the grid");

  MeasureResult r;
  r.route = Route::wigner_grid;
  const double norm = grid.integral();
  if (std::abs(norm - 1.0) > opt.norm_tol) {
    const std::string msg = "Wigner grid integrates to " + format_number(norm) + " (tolerance " +
                            format_number(opt.norm_tol) + ")";
    if (opt.strict_normalization) throw NormalizationError(msg);
    r.warnings.push_back(msg + "; renormalized");
  }
  WignerGrid w = grid;
  w.values /= norm;

  r.value = spectral_measure(w);
  const double dA = w.x.spacing() * w.p.spacing();
  double pur = 0.0, second = 0.0;
  for (Eigen::Index i = 0; i < nx; ++i)
    for (Eigen::Index j = 0; j < np; ++j) {
      const double v = w.values(i, j), x = w.x.at(static_cast<int>(i)), p = w.p.at(static_cast<int>(j));
      pur += v * v;
      second += (x * x + p * p) * v;
    }
  r.purity = std::numbers::pi * pur * dA;
  r.mean_n = second * dA - 0.5;

  if (w.x.n >= 32 && w.p.n >= 32) {
    WignerGrid half = every_second(w);
    half.values /= half.integral();
    r.err_estimate = std::abs(r.value - spectral_measure(half));
  } else {
    r.warnings.push_back("grid too small for a half-resolution error estimate");
  }
  return r;
}

}  // namespace macroq

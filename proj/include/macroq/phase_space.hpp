#pragma once

// Sampled phase-space functions of a single mode.
//
// Convention (alpha-plane): alpha = x + i p with W normalized to integrate to
// one over dx dp, and
//   chi(xi) = Integral W(alpha) exp(2i (x xi_i - p xi_r)) dx dp,
//   W(alpha) = pi^-2 Integral chi(xi) exp(-2i (x xi_i - p xi_r)) d^2 xi.

#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "macroq/axis.hpp"
#include "macroq/fock.hpp"

namespace macroq {

using GridMeta = std::vector<std::pair<std::string, std::string>>;

/// values(i, j) = W(x_i + i p_j).
struct WignerGrid {
  Axis x;
  Axis p;
  Eigen::MatrixXd values;
  GridMeta meta;

  /// Riemann sum of W dx dp.
  double integral() const;
  /// Throws DimensionError unless the axes have >= 16 points and match `values`.
  void validate() const;
};

/// values(i, j) = chi(xi_r_i + i xi_i_j).
struct CharGrid {
  Axis xr;
  Axis xi;
  CMatrix values;
  GridMeta meta;

  void validate() const;
};

/// Half-width of a square grid that holds the Wigner function of `rho`
/// down to ~1e-8 of its peak: max(5, 6.5 sqrt(<n> + 1/2)).
double suggest_half_width(const DensityMatrix& rho);

/// W on the grid from the Fock-basis formula. Throws CoverageError when the
/// sampled W integrates to something further than `coverage_tol` from one.
WignerGrid wigner_of(const DensityMatrix& rho, const Axis& x, const Axis& p, double coverage_tol = 0.01);
/// Square grid from `suggest_half_width` with `points` per axis.
WignerGrid wigner_of(const DensityMatrix& rho, int points = 256);

/// chi = Tr[rho D(xi)] from the displacement matrix elements.
CharGrid char_of(const DensityMatrix& rho, const Axis& xr, const Axis& xi);

/// chi on the dual grid of `w` by a 2D FFT: xi_r = pi q / (n_p dp) and
/// xi_i = pi q / (n_x dx) for q in [-n/2, n/2).
CharGrid char_from_wigner(const WignerGrid& w);

/// Dominant angular frequency of W along p through the column nearest to
/// x = x0 (zero-padded x2 FFT, peak picked with parabolic refinement,
/// the zero-frequency bin excluded).
double fringe_frequency(const WignerGrid& w, double x0 = 0.0);

}  // namespace macroq

#pragma once

// The three numeric routes for I:
//   operator:        I = sum_m Tr(rho^2 n_m) - Tr(rho a_m rho a_m^H) = -Tr[rho L(rho)]
//   char-quadrature: I = (2 pi^M)^-1 Integral sum_m (|xi_m|^2 - 1) |chi(xi)|^2 d^2M xi
//   wigner-grid:     the same integral with chi obtained from a sampled W by FFT

#include "macroq/catalog.hpp"
#include "macroq/fock.hpp"
#include "macroq/phase_space.hpp"
#include "macroq/result.hpp"
#include "macroq/tolerances.hpp"

namespace macroq {

/// Exact in the truncated space. When the two highest levels of a mode hold
/// more than `tol.top_level_population`, a warning is attached and
/// err_estimate carries a geometric-tail guess of the truncation error.
MeasureResult measure_operator(const DensityMatrix& rho, const Tolerances& tol = {});

struct QuadratureOptions {
  double radial_cut = 8.0;
  double tol = 1e-9;
  unsigned max_depth = 15;
  /// Double the radial cut (up to 4 times) while the shell beyond it
  /// still contributes more than `tol`.
  bool auto_extend = true;
};

/// Nested adaptive quadrature in polar coordinates per mode (Gauss-Kronrod
/// in r, periodic trapezoid in phi). mean_n comes from a finite-difference
/// Laplacian of chi at 0, purity from pi^-M Integral |chi|^2. Throws
/// ConvergenceError with the partial estimate when the tolerance is missed.
MeasureResult measure_char_quadrature(const CharFunction& chi, int modes, const QuadratureOptions& opt = {});

struct GridCheckOptions {
  double boundary_leak = 1e-8;  // boundary |W| relative to the peak
  double norm_tol = 0.02;
  bool strict_normalization = true;
};

/// Spectral route: chi from the FFT of W, then the weighted Parseval sum on
/// the dual grid. W is divided by its integral first (a deviation beyond
/// `norm_tol` raises NormalizationError, or a warning when not strict).
/// err_estimate is |I - I_half| with I_half from every second sample.
/// Throws CoverageError if the boundary holds more than `boundary_leak` of the peak.
MeasureResult measure_wigner_grid(const WignerGrid& grid, const GridCheckOptions& opt = {});

}  // namespace macroq

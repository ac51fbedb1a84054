#pragma once

namespace macroq {

/// Numerical acceptance thresholds for state validation. Every field can be
/// overridden by passing a modified copy to the functions that take one.
struct Tolerances {
  double hermitian = 1e-12;         // max|rho - rho^H| relative to max|rho|
  double trace = 1e-10;             // |Tr rho - 1|
  double positivity = -1e-9;        // eigenvalue floor
  double ket_norm = 1e-12;          // | ||psi|| - 1 |
  double displacement_leak = 1e-6;  // trace lost to truncation after D(beta)
  double top_level_population = 1e-8;
};

}  // namespace macroq

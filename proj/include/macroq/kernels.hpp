#pragma once

// Hot loops of the library in two flavours.
//
// `serial` is the reference: straightforward dense algebra with full ladder
// operators (and the associated-Laguerre form of the displacement elements),
// kept for testing and benchmarking. `parallel` exploits the shift structure
// of the ladder operators and runs the outer loops under OpenMP; it is what
// the public API calls. Tests pin the two against each other.

#include <Eigen/Dense>

#include "macroq/axis.hpp"
#include "macroq/fock.hpp"

namespace macroq::kernels {

/// Summed over modes: Tr(rho^2 n_m) and Tr(rho a_m rho a_m^H).
struct OperatorTraces {
  double rho2_number = 0.0;
  double jump = 0.0;
};

namespace serial {

CMatrix lindblad_rhs(const CMatrix& rho, const ModeCutoffs& cutoffs, double jump_sign = 1.0);
OperatorTraces operator_traces(const CMatrix& rho, const ModeCutoffs& cutoffs);
CMatrix apply_mode_left(const CMatrix& x, const CMatrix& op, const ModeCutoffs& cutoffs, int mode);
CMatrix displacement_matrix(cplx beta, int dim);
Eigen::MatrixXd wigner_grid(const CMatrix& rho, const Axis& x, const Axis& p);
CMatrix char_grid(const CMatrix& rho, const Axis& xr, const Axis& xi);

}  // namespace serial

namespace parallel {

CMatrix lindblad_rhs(const CMatrix& rho, const ModeCutoffs& cutoffs, double jump_sign = 1.0);
OperatorTraces operator_traces(const CMatrix& rho, const ModeCutoffs& cutoffs);
CMatrix apply_mode_left(const CMatrix& x, const CMatrix& op, const ModeCutoffs& cutoffs, int mode);
CMatrix displacement_matrix(cplx beta, int dim);
Eigen::MatrixXd wigner_grid(const CMatrix& rho, const Axis& x, const Axis& p);
CMatrix char_grid(const CMatrix& rho, const Axis& xr, const Axis& xi);

}  // namespace parallel

}  // namespace macroq::kernels

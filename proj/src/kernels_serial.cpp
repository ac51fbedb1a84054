#include <cmath>
#include <numbers>

#include <boost/math/special_functions/laguerre.hpp>

#include "macroq/error.hpp"
#include "macroq/kernels.hpp"

namespace macroq::kernels::serial {

CMatrix lindblad_rhs(const CMatrix& rho, const ModeCutoffs& cutoffs, double jump_sign) {
  CMatrix out = CMatrix::Zero(rho.rows(), rho.cols());
  for (int m = 0; m < cutoffs.modes(); ++m) {
    CMatrix a = annihilation_op(cutoffs, m);
    CMatrix n = a.adjoint() * a;
    out += jump_sign * (a * rho * a.adjoint()) - 0.5 * (n * rho + rho * n);
  }
  return out;
}

OperatorTraces operator_traces(const CMatrix& rho, const ModeCutoffs& cutoffs) {
  OperatorTraces t;
  for (int m = 0; m < cutoffs.modes(); ++m) {
    CMatrix a = annihilation_op(cutoffs, m);
    CMatrix n = a.adjoint() * a;
    t.rho2_number += (rho * rho * n).trace().real();
    t.jump += (rho * a * rho * a.adjoint()).trace().real();
  }
  return t;
}

CMatrix apply_mode_left(const CMatrix& x, const CMatrix& op, const ModeCutoffs& cutoffs, int mode) {
  // Build I_outer (x) op (x) I_inner explicitly.
  std::size_t inner = cutoffs.stride(mode);
  std::size_t outer = cutoffs.total() / (inner * static_cast<std::size_t>(cutoffs.dim(mode)));
  auto D = static_cast<Eigen::Index>(cutoffs.total());
  CMatrix full = CMatrix::Zero(D, D);
  const auto d = static_cast<std::size_t>(cutoffs.dim(mode));
  for (std::size_t o = 0; o < outer; ++o)
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c)
        for (std::size_t i = 0; i < inner; ++i) {
          auto row = static_cast<Eigen::Index>((o * d + r) * inner + i);
          auto col = static_cast<Eigen::Index>((o * d + c) * inner + i);
          full(row, col) = op(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
        }
  return full * x;
}

CMatrix displacement_matrix(cplx beta, int dim) {
  // <m|D|n> = sqrt(n!/m!) beta^(m-n) e^{-|b|^2/2} L_n^(m-n)(|b|^2)   (m >= n)
  //         = sqrt(m!/n!) (-beta*)^(n-m) e^{-|b|^2/2} L_m^(n-m)(|b|^2) (m < n)
  CMatrix out(dim, dim);
  double x = std::norm(beta);
  for (int m = 0; m < dim; ++m) {
    for (int n = 0; n < dim; ++n) {
      int lo = std::min(m, n), k = std::abs(m - n);
      cplx base = m >= n ? beta : -std::conj(beta);
      double logpre = 0.5 * (std::lgamma(lo + 1.0) - std::lgamma(lo + k + 1.0)) - 0.5 * x;
      double lag = boost::math::laguerre(static_cast<unsigned>(lo), static_cast<unsigned>(k), x);
      cplx power = k == 0 ? cplx{1.0} : std::pow(base, k);
      out(m, n) = std::exp(logpre) * power * lag;
    }
  }
  return out;
}

Eigen::MatrixXd wigner_grid(const CMatrix& rho, const Axis& x, const Axis& p) {
  auto d = static_cast<int>(rho.rows());
  Eigen::MatrixXd w(x.n, p.n);
  for (int i = 0; i < x.n; ++i) {
    for (int j = 0; j < p.n; ++j) {
      CMatrix dm = displacement_matrix(2.0 * cplx{x.at(i), p.at(j)}, d);
      cplx s = 0.0;
      for (int m = 0; m < d; ++m)
        for (int n = 0; n < d; ++n) s += rho(m, n) * (m % 2 ? -1.0 : 1.0) * dm(n, m);
      w(i, j) = 2.0 / std::numbers::pi * s.real();
    }
  }
  return w;
}

CMatrix char_grid(const CMatrix& rho, const Axis& xr, const Axis& xi) {
  auto d = static_cast<int>(rho.rows());
  CMatrix out(xr.n, xi.n);
  for (int i = 0; i < xr.n; ++i)
    for (int j = 0; j < xi.n; ++j)
      out(i, j) = (rho * displacement_matrix(cplx{xr.at(i), xi.at(j)}, d)).trace();
  return out;
}

}  // namespace macroq::kernels::serial

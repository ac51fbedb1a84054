#include <cmath>
#include <numbers>
#include <vector>

#include "macroq/kernels.hpp"

namespace macroq::kernels::parallel {

namespace {

// levels(i, m) = n_m of flat index i; row i also carries the total number.
struct LevelTable {
  Eigen::MatrixXi levels;
  Eigen::VectorXd total;
};

LevelTable level_table(const ModeCutoffs& c) {
  auto D = static_cast<Eigen::Index>(c.total());
  LevelTable t{Eigen::MatrixXi(D, c.modes()), Eigen::VectorXd(D)};
  for (Eigen::Index i = 0; i < D; ++i) {
    int n = 0;
    for (int m = 0; m < c.modes(); ++m) {
      t.levels(i, m) = c.level(static_cast<std::size_t>(i), m);
      n += t.levels(i, m);
    }
    t.total(i) = n;
  }
  return t;
}

// Fills `out` (dim x dim, preallocated) with <m|D(beta)|n>. For m = n + k,
// f_n = sqrt(n!/(n+k)!) |beta|^k e^{-x/2} L_n^(k)(x), x = |beta|^2, obeys
//   f_{n+1} = [(2n+1+k-x) f_n - sqrt(n(n+k)) f_{n-1}] / sqrt((n+1)(n+k+1)),
// the forward Laguerre recurrence on normalized values, stable where the
// two-index ladder recurrence is not. Above the diagonal
// <m|D|n> = (-1)^{n-m} conj(<n|D|m>).
void displacement_into(cplx beta, int dim, CMatrix& out) {
  const double x = std::norm(beta), lx = x > 0.0 ? std::log(x) : 0.0;
  const double phi = std::arg(beta);
  double log_fact = 0.0;  // log k!
  for (int k = 0; k < dim; ++k) {
    if (k) log_fact += std::log(double(k));
    double fm1 = 0.0;
    double f = x > 0.0 ? std::exp(0.5 * k * lx - 0.5 * x - 0.5 * log_fact) : (k == 0 ? 1.0 : 0.0);
    const cplx ph = std::polar(1.0, k * phi);
    const double sign = k % 2 ? -1.0 : 1.0;
    for (int n = 0; n + k < dim; ++n) {
      const cplx v = ph * f;
      out(n + k, n) = v;
      if (k) out(n, n + k) = sign * std::conj(v);
      const double next = ((2.0 * n + 1.0 + k - x) * f - std::sqrt(double(n) * (n + k)) * fm1) /
                          std::sqrt((n + 1.0) * (n + k + 1.0));
      fm1 = f;
      f = next;
    }
  }
}

}  // namespace

CMatrix lindblad_rhs(const CMatrix& rho, const ModeCutoffs& cutoffs, double jump_sign) {
  const auto D = static_cast<Eigen::Index>(cutoffs.total());
  const LevelTable t = level_table(cutoffs);
  const int M = cutoffs.modes();
  std::vector<Eigen::Index> stride(static_cast<std::size_t>(M));
  for (int m = 0; m < M; ++m) stride[static_cast<std::size_t>(m)] = static_cast<Eigen::Index>(cutoffs.stride(m));

  CMatrix out(D, D);
#pragma omp parallel for schedule(static)
  for (Eigen::Index j = 0; j < D; ++j) {
    for (Eigen::Index i = 0; i < D; ++i) {
      cplx v = -0.5 * (t.total(i) + t.total(j)) * rho(i, j);
      for (int m = 0; m < M; ++m) {
        int li = t.levels(i, m) + 1, lj = t.levels(j, m) + 1;
        if (li < cutoffs.dim(m) && lj < cutoffs.dim(m)) {
          auto s = stride[static_cast<std::size_t>(m)];
          v += jump_sign * std::sqrt(double(li) * double(lj)) * rho(i + s, j + s);
        }
      }
      out(i, j) = v;
    }
  }
  return out;
}

OperatorTraces operator_traces(const CMatrix& rho, const ModeCutoffs& cutoffs) {
  const auto D = static_cast<Eigen::Index>(cutoffs.total());
  const LevelTable t = level_table(cutoffs);
  const int M = cutoffs.modes();
  // w_m(i) = sqrt(n_m(i) + 1), zero on the top level of mode m.
  Eigen::MatrixXd w(D, M);
  for (int m = 0; m < M; ++m)
    for (Eigen::Index i = 0; i < D; ++i) {
      const int l = t.levels(i, m) + 1;
      w(i, m) = l < cutoffs.dim(m) ? std::sqrt(double(l)) : 0.0;
    }
  double rho2n = 0.0, jump = 0.0;
#pragma omp parallel for schedule(static) reduction(+ : rho2n, jump)
  for (Eigen::Index j = 0; j < D; ++j) {
    // Column j of rho equals the conjugate of row j, so |rho_jk|^2 sums over the column.
    rho2n += t.total(j) * rho.col(j).squaredNorm();
    // Tr(rho a rho a^H) = sum_ij rho_ij w_i w_j rho_{j+s,i+s}, and
    // rho_{j+s,i+s} = conj(rho_{i+s,j+s}) keeps both factors on columns.
    for (int m = 0; m < M; ++m) {
      if (w(j, m) == 0.0) continue;
      const auto s = static_cast<Eigen::Index>(cutoffs.stride(m));
      const Eigen::Index len = D - s;
      const cplx inner = rho.col(j + s).segment(s, len).dot(w.col(m).head(len).cwiseProduct(rho.col(j).head(len)));
      jump += w(j, m) * inner.real();
    }
  }
  return {rho2n, jump};
}

CMatrix apply_mode_left(const CMatrix& x, const CMatrix& op, const ModeCutoffs& cutoffs, int mode) {
  const auto inner = static_cast<Eigen::Index>(cutoffs.stride(mode));
  const auto d = static_cast<Eigen::Index>(cutoffs.dim(mode));
  const auto outer = static_cast<Eigen::Index>(cutoffs.total()) / (inner * d);
  CMatrix out(x.rows(), x.cols());
#pragma omp parallel for schedule(static)
  for (Eigen::Index col = 0; col < x.cols(); ++col) {
    CVector v(d), w(d);
    for (Eigen::Index o = 0; o < outer; ++o) {
      for (Eigen::Index i = 0; i < inner; ++i) {
        const Eigen::Index base = o * d * inner + i;
        for (Eigen::Index r = 0; r < d; ++r) v(r) = x(base + r * inner, col);
        w.noalias() = op * v;
        for (Eigen::Index r = 0; r < d; ++r) out(base + r * inner, col) = w(r);
      }
    }
  }
  return out;
}

CMatrix displacement_matrix(cplx beta, int dim) {
  CMatrix out(dim, dim);
  displacement_into(beta, dim, out);
  return out;
}

Eigen::MatrixXd wigner_grid(const CMatrix& rho, const Axis& x, const Axis& p) {
  const int d = static_cast<int>(rho.rows());
  // W(alpha) = (2/pi) sum_mn rho_mn (-1)^m <n|D(2 alpha)|m> = (2/pi) sum (rho P)_mn D_nm
  CMatrix rho_parity = rho;
  for (int m = 1; m < d; m += 2) rho_parity.row(m) *= -1.0;
  const CMatrix rp_t = rho_parity.transpose();
  Eigen::MatrixXd w(x.n, p.n);
  const Eigen::Index npts = static_cast<Eigen::Index>(x.n) * p.n;
#pragma omp parallel
  {
    CMatrix dm(d, d);
#pragma omp for schedule(static)
    for (Eigen::Index k = 0; k < npts; ++k) {
      const int i = static_cast<int>(k / p.n), j = static_cast<int>(k % p.n);
      displacement_into(2.0 * cplx{x.at(i), p.at(j)}, d, dm);
      w(i, j) = 2.0 / std::numbers::pi * rp_t.cwiseProduct(dm).sum().real();
    }
  }
  return w;
}

CMatrix char_grid(const CMatrix& rho, const Axis& xr, const Axis& xi) {
  const int d = static_cast<int>(rho.rows());
  const CMatrix rho_t = rho.transpose();
  CMatrix out(xr.n, xi.n);
  const Eigen::Index npts = static_cast<Eigen::Index>(xr.n) * xi.n;
#pragma omp parallel
  {
    CMatrix dm(d, d);
#pragma omp for schedule(static)
    for (Eigen::Index k = 0; k < npts; ++k) {
      const int i = static_cast<int>(k / xi.n), j = static_cast<int>(k % xi.n);
      displacement_into(cplx{xr.at(i), xi.at(j)}, d, dm);
      out(i, j) = rho_t.cwiseProduct(dm).sum();
    }
  }
  return out;
}

}  // namespace macroq::kernels::parallel

#include "macroq/product_rank.hpp"

#include <cmath>
#include <string>

#include "macroq/error.hpp"

namespace macroq {

ProductKet::ProductKet(std::vector<CVector> factors) : factors_(std::move(factors)) {
  if (factors_.empty()) throw InvalidArgument("ProductKet: at least one mode is required");
  for (const auto& f : factors_) {
    if (f.size() < 1 || f.size() > kMaxFactorDim)
      throw InvalidArgument("ProductKet: factor dimension must be in [1, " + std::to_string(kMaxFactorDim) + "]");
    if (std::abs(f.norm() - 1.0) > 1e-12) throw InvalidArgument("ProductKet: factor is not unit norm");
  }
}

ProductKet ProductKet::uniform(const CVector& factor, int modes) {
  if (modes < 1) throw InvalidArgument("ProductKet::uniform: modes must be >= 1");
  return ProductKet(std::vector<CVector>(static_cast<std::size_t>(modes), factor));
}

ProductRankState::ProductRankState(std::vector<ProductKet> kets, CMatrix coeff)
    : kets_(std::move(kets)), coeff_(std::move(coeff)) {
  if (kets_.empty()) throw InvalidArgument("ProductRankState: no kets");
  const auto r = static_cast<Eigen::Index>(kets_.size());
  if (coeff_.rows() != r || coeff_.cols() != r) throw DimensionError("ProductRankState: coeff must be r x r");
  const int M = kets_.front().modes();
  for (const auto& k : kets_) {
    if (k.modes() != M) throw DimensionError("ProductRankState: kets have different mode counts");
    for (int m = 0; m < M; ++m)
      if (k.factor(m).size() != kets_.front().factor(m).size())
        throw DimensionError("ProductRankState: factor dimensions differ between kets");
  }
  double scale = coeff_.cwiseAbs().maxCoeff();
  if ((coeff_ - coeff_.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw InvalidArgument("ProductRankState: coeff is not Hermitian");
  const double tr = (coeff_ * gram(*this)).trace().real();
  if (!(tr > 0.0)) throw InvalidArgument("ProductRankState: non-positive trace");
  coeff_ /= tr;
}

std::vector<int> ProductRankState::factor_dims() const {
  std::vector<int> dims;
  for (const auto& f : kets_.front().factors()) dims.push_back(static_cast<int>(f.size()));
  return dims;
}

namespace {

cplx lowering_element(const CVector& bra, const CVector& ket) {
  cplx s = 0.0;
  for (Eigen::Index n = 0; n + 1 < ket.size(); ++n) s += std::conj(bra(n)) * std::sqrt(double(n + 1)) * ket(n + 1);
  return s;
}

cplx number_element(const CVector& bra, const CVector& ket) {
  cplx s = 0.0;
  for (Eigen::Index n = 1; n < ket.size(); ++n) s += std::conj(bra(n)) * double(n) * ket(n);
  return s;
}

// Per-mode matrix elements <psi_j| O_m |psi_k> for O in {1, a, n}; the other
// modes contribute the product of overlaps, taken from prefix/suffix products
// so that vanishing overlaps need no division.
struct PairElements {
  CMatrix gram;                  // r x r
  std::vector<CMatrix> lowering; // M matrices r x r
  CMatrix number_total;          // sum over modes
};

PairElements pair_elements(const ProductRankState& s) {
  const int r = s.rank(), M = s.modes();
  PairElements out{CMatrix(r, r), std::vector<CMatrix>(static_cast<std::size_t>(M), CMatrix(r, r)),
                   CMatrix::Zero(r, r)};
  std::vector<cplx> ov(static_cast<std::size_t>(M)), prefix(static_cast<std::size_t>(M) + 1),
      suffix(static_cast<std::size_t>(M) + 1);
  for (int j = 0; j < r; ++j) {
    for (int k = 0; k < r; ++k) {
      const auto& bra = s.kets()[static_cast<std::size_t>(j)];
      const auto& ket = s.kets()[static_cast<std::size_t>(k)];
      for (int m = 0; m < M; ++m) ov[static_cast<std::size_t>(m)] = bra.factor(m).dot(ket.factor(m));
      prefix[0] = 1.0;
      for (std::size_t m = 0; m < ov.size(); ++m) prefix[m + 1] = prefix[m] * ov[m];
      suffix[ov.size()] = 1.0;
      for (std::size_t m = ov.size(); m-- > 0;) suffix[m] = suffix[m + 1] * ov[m];
      out.gram(j, k) = prefix[ov.size()];
      cplx ntot = 0.0;
      for (int m = 0; m < M; ++m) {
        auto um = static_cast<std::size_t>(m);
        cplx rest = prefix[um] * suffix[um + 1];
        out.lowering[um](j, k) = lowering_element(bra.factor(m), ket.factor(m)) * rest;
        ntot += number_element(bra.factor(m), ket.factor(m)) * rest;
      }
      out.number_total(j, k) = ntot;
    }
  }
  return out;
}

}  // namespace

CMatrix gram(const ProductRankState& state) {
  const int r = state.rank(), M = state.modes();
  CMatrix g(r, r);
  for (int j = 0; j < r; ++j)
    for (int k = 0; k < r; ++k) {
      cplx p = 1.0;
      for (int m = 0; m < M; ++m)
        p *= state.kets()[static_cast<std::size_t>(j)].factor(m).dot(state.kets()[static_cast<std::size_t>(k)].factor(m));
      g(j, k) = p;
    }
  return g;
}

MeasureResult measure_lowrank(const ProductRankState& state) {
  const PairElements e = pair_elements(state);
  const CMatrix& c = state.coeff();
  const int M = state.modes();

  double jump = 0.0;
#pragma omp parallel for schedule(static) reduction(+ : jump)
  for (int m = 0; m < M; ++m) {
    const CMatrix& a = e.lowering[static_cast<std::size_t>(m)];
    jump += (c * a * c * a.adjoint()).trace().real();
  }
  const CMatrix cg = c * e.gram;
  MeasureResult r;
  r.route = Route::low_rank;
  r.value = (cg * c * e.number_total).trace().real() - jump;
  r.mean_n = (c * e.number_total).trace().real();
  r.purity = (cg * cg).trace().real();
  r.err_estimate = 0.0;
  return r;
}

DensityMatrix to_dense(const ProductRankState& state, std::size_t max_dim) {
  std::vector<int> dims = state.factor_dims();
  std::size_t D = 1;
  for (int d : dims) {
    D *= static_cast<std::size_t>(d);
    if (D > max_dim)
      throw DimensionError("to_dense: dimension exceeds limit of " + std::to_string(max_dim));
  }
  const auto r = state.rank();
  std::vector<CVector> vecs;
  for (const auto& k : state.kets()) {
    CVector v = k.factor(0);
    for (int m = 1; m < k.modes(); ++m) {
      const CVector& f = k.factor(m);
      CVector next(v.size() * f.size());
      for (Eigen::Index i = 0; i < v.size(); ++i) next.segment(i * f.size(), f.size()) = v(i) * f;
      v = std::move(next);
    }
    vecs.push_back(std::move(v));
  }
  CMatrix V(static_cast<Eigen::Index>(D), r);
  for (int i = 0; i < r; ++i) V.col(i) = vecs[static_cast<std::size_t>(i)];
  CMatrix rho(static_cast<Eigen::Index>(D), static_cast<Eigen::Index>(D));
  rho.noalias() = V * state.coeff() * V.adjoint();
  return DensityMatrix::normalized(ModeCutoffs(dims), std::move(rho));
}

ProductRankState dephased(const ProductRankState& state) {
  CMatrix c = state.coeff().diagonal().asDiagonal();
  return ProductRankState(state.kets(), std::move(c));
}

}  // namespace macroq

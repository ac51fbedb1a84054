#pragma once

// Rank-r states over many modes whose kets are products of small single-mode
// factors: rho = sum_ij c_ij |psi_i><psi_j|. Every trace needed for I reduces
// to products of single-mode overlaps, so cost is O(r^2 M) instead of
// exponential in M.

#include <cstddef>
#include <vector>

#include "macroq/fock.hpp"
#include "macroq/result.hpp"

namespace macroq {

/// Largest per-mode factor dimension accepted by the engine.
inline constexpr int kMaxFactorDim = 16;

/// |psi> = (x)_m |f_m>; each factor unit norm.
class ProductKet {
 public:
  explicit ProductKet(std::vector<CVector> factors);
  /// Same factor on every one of `modes` modes.
  static ProductKet uniform(const CVector& factor, int modes);

  int modes() const { return static_cast<int>(factors_.size()); }
  const CVector& factor(int m) const { return factors_[static_cast<std::size_t>(m)]; }
  const std::vector<CVector>& factors() const { return factors_; }

 private:
  std::vector<CVector> factors_;
};

class ProductRankState {
 public:
  /// `coeff` must be Hermitian and r x r; it is rescaled so that Tr rho = 1
  /// using the Gram matrix of the kets.
  ProductRankState(std::vector<ProductKet> kets, CMatrix coeff);

  int rank() const { return static_cast<int>(kets_.size()); }
  int modes() const { return kets_.front().modes(); }
  const std::vector<ProductKet>& kets() const { return kets_; }
  const CMatrix& coeff() const { return coeff_; }
  std::vector<int> factor_dims() const;

 private:
  std::vector<ProductKet> kets_;
  CMatrix coeff_;
};

/// G(j, i) = <psi_j|psi_i> = prod_m <f_j^m|f_i^m>.
CMatrix gram(const ProductRankState& state);

/// I = sum_m [Tr(rho^2 n_m) - Tr(rho a_m rho a_m^H)], exact for the given
/// factor spaces.
MeasureResult measure_lowrank(const ProductRankState& state);

/// Same state as a dense matrix over the factor spaces. Throws DimensionError
/// when prod_m d_m exceeds `max_dim`.
DensityMatrix to_dense(const ProductRankState& state, std::size_t max_dim = 4096);

/// The same kets with the off-diagonal coefficients removed (classical mixture).
ProductRankState dephased(const ProductRankState& state);

}  // namespace macroq

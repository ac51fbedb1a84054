#pragma once

// Dense truncated-Fock-space representation of one to a few bosonic modes.
//
// Basis ordering: a flat index enumerates multi-indices (n_0, ..., n_{M-1})
// with mode 0 most significant, i.e. the ordering of a Kronecker product
// a_0 (x) a_1 (x) ... . Each mode keeps levels 0..d_m-1.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "macroq/tolerances.hpp"

namespace macroq {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

class ModeCutoffs {
 public:
  explicit ModeCutoffs(std::vector<int> dims);
  ModeCutoffs(std::initializer_list<int> dims) : ModeCutoffs(std::vector<int>(dims)) {}

  int modes() const { return static_cast<int>(dims_.size()); }
  int dim(int mode) const { return dims_.at(static_cast<std::size_t>(mode)); }
  const std::vector<int>& dims() const { return dims_; }
  std::size_t total() const { return total_; }

  /// Distance in flat index between consecutive levels of `mode`.
  std::size_t stride(int mode) const { return strides_.at(static_cast<std::size_t>(mode)); }

  int level(std::size_t index, int mode) const {
    auto m = static_cast<std::size_t>(mode);
    return static_cast<int>((index / strides_[m]) % static_cast<std::size_t>(dims_[m]));
  }
  int total_number(std::size_t index) const;

  std::vector<int> multi_index(std::size_t index) const;
  std::size_t flat_index(std::span<const int> levels) const;

  bool operator==(const ModeCutoffs& o) const { return dims_ == o.dims_; }

 private:
  std::vector<int> dims_;
  std::vector<std::size_t> strides_;
  std::size_t total_ = 1;
};

/// Normalized pure state.
class Ket {
 public:
  /// Takes ownership of `amplitudes` and validates the norm.
  Ket(ModeCutoffs cutoffs, CVector amplitudes, const Tolerances& tol = {});
  /// Rescales `amplitudes` to unit norm. Throws on a zero vector.
  static Ket normalized(ModeCutoffs cutoffs, CVector amplitudes);

  const ModeCutoffs& cutoffs() const { return cutoffs_; }
  const CVector& amplitudes() const { return amps_; }

 private:
  ModeCutoffs cutoffs_;
  CVector amps_;
};

/// Hermitian, unit-trace matrix over a truncated multi-mode Fock space.
/// Construction checks hermiticity and trace; positivity is checked on
/// demand by `check_positive` because it needs an eigendecomposition.
class DensityMatrix {
 public:
  DensityMatrix(ModeCutoffs cutoffs, CMatrix data, const Tolerances& tol = {});

  /// Symmetrizes (rho + rho^H)/2 and divides by the trace before validating.
  static DensityMatrix normalized(ModeCutoffs cutoffs, CMatrix data, const Tolerances& tol = {});
  static DensityMatrix from_ket(const Ket& ket);

  const ModeCutoffs& cutoffs() const { return cutoffs_; }
  const CMatrix& matrix() const { return data_; }
  std::size_t dim() const { return cutoffs_.total(); }

  double min_eigenvalue() const;
  void check_positive(const Tolerances& tol = {}) const;

 private:
  ModeCutoffs cutoffs_;
  CMatrix data_;
};

/// a_m as a dense D x D matrix.
CMatrix annihilation_op(const ModeCutoffs& cutoffs, int mode);
CMatrix creation_op(const ModeCutoffs& cutoffs, int mode);
/// a_m^H a_m.
CMatrix mode_number_op(const ModeCutoffs& cutoffs, int mode);
/// Sum over modes of a_m^H a_m.
CMatrix number_op(const ModeCutoffs& cutoffs);

double mean_number(const DensityMatrix& rho);
double purity(const DensityMatrix& rho);

/// Population of the two highest levels of `mode`. Two levels because parity
/// symmetric states (cats, squeezed vacua) leave every other level empty.
double top_level_population(const DensityMatrix& rho, int mode);

/// ceil(n + 6 sqrt(n) + 10): Poisson-tail heuristic for coherent-like states.
int suggest_cutoff(double mean_n);
/// `suggest_cutoff`, unless MACROQ_DEFAULT_CUTOFF is set in the environment.
int default_cutoff(double mean_n);

/// <m|D(beta)|n> for m, n < dim; analytic Fock elements (not a truncated
/// exponential), from a forward Laguerre recurrence along each diagonal.
CMatrix displacement_matrix(cplx beta, int dim);

/// (I (x) .. (x) op (x) .. (x) I) * x, with `op` acting on `mode`.
CMatrix apply_mode_left(const CMatrix& x, const CMatrix& op, const ModeCutoffs& cutoffs, int mode);

/// D(beta) rho D(beta)^H with one displacement per mode. Throws
/// TruncationError when more than `tol.displacement_leak` of the trace
/// leaves the truncated space; otherwise the result is renormalized.
DensityMatrix apply_displacement(const DensityMatrix& rho, std::span<const cplx> beta,
                                 const Tolerances& tol = {});

/// exp(i theta_m n_m) rho exp(-i theta_m n_m); exact in the truncated space.
DensityMatrix apply_rotation(const DensityMatrix& rho, std::span<const double> theta);

Ket tensor(const Ket& a, const Ket& b);
DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);

}  // namespace macroq

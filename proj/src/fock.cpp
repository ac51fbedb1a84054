#include "macroq/fock.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include <Eigen/Eigenvalues>

#include "macroq/error.hpp"
#include "macroq/kernels.hpp"

namespace macroq {

ModeCutoffs::ModeCutoffs(std::vector<int> dims) : dims_(std::move(dims)) {
  if (dims_.empty()) throw InvalidArgument("ModeCutoffs: at least one mode is required");
  for (int d : dims_) {
    if (d < 1) throw InvalidArgument("ModeCutoffs: every cutoff must be >= 1");
  }
  strides_.assign(dims_.size(), 1);
  for (std::size_t m = dims_.size(); m-- > 0;) {
    strides_[m] = total_;
    total_ *= static_cast<std::size_t>(dims_[m]);
  }
}

int ModeCutoffs::total_number(std::size_t index) const {
  int n = 0;
  for (int m = 0; m < modes(); ++m) n += level(index, m);
  return n;
}

std::vector<int> ModeCutoffs::multi_index(std::size_t index) const {
  if (index >= total_) throw InvalidArgument("multi_index: index out of range");
  std::vector<int> out(dims_.size());
  for (int m = 0; m < modes(); ++m) out[static_cast<std::size_t>(m)] = level(index, m);
  return out;
}

std::size_t ModeCutoffs::flat_index(std::span<const int> levels) const {
  if (levels.size() != dims_.size()) throw InvalidArgument("flat_index: wrong number of modes");
  std::size_t idx = 0;
  for (std::size_t m = 0; m < dims_.size(); ++m) {
    if (levels[m] < 0 || levels[m] >= dims_[m]) throw InvalidArgument("flat_index: level out of range");
    idx += static_cast<std::size_t>(levels[m]) * strides_[m];
  }
  return idx;
}

namespace {

// Calls f(i, j) for every i <= j in cache-sized tiles, so that the mirrored
// element (j, i) is read from a tile that is still resident.
template <class F>
void for_upper_blocks(Eigen::Index D, F&& f) {
  constexpr Eigen::Index B = 64;
  for (Eigen::Index j0 = 0; j0 < D; j0 += B)
    for (Eigen::Index i0 = 0; i0 <= j0; i0 += B)
      for (Eigen::Index j = j0; j < std::min(j0 + B, D); ++j)
        for (Eigen::Index i = i0; i < std::min(i0 + B, j + 1); ++i) f(i, j);
}

}  // namespace

Ket::Ket(ModeCutoffs cutoffs, CVector amplitudes, const Tolerances& tol)
    : cutoffs_(std::move(cutoffs)), amps_(std::move(amplitudes)) {
  if (static_cast<std::size_t>(amps_.size()) != cutoffs_.total())
    throw DimensionError("Ket: amplitude length does not match cutoffs");
  if (std::abs(amps_.norm() - 1.0) > tol.ket_norm)
    throw InvalidArgument("Ket: amplitudes are not unit norm");
}

Ket Ket::normalized(ModeCutoffs cutoffs, CVector amplitudes) {
  double n = amplitudes.norm();
  if (!(n > 0.0)) throw InvalidArgument("Ket: zero vector");
  amplitudes /= n;
  return Ket(std::move(cutoffs), std::move(amplitudes));
}

DensityMatrix::DensityMatrix(ModeCutoffs cutoffs, CMatrix data, const Tolerances& tol)
    : cutoffs_(std::move(cutoffs)), data_(std::move(data)) {
  auto D = static_cast<Eigen::Index>(cutoffs_.total());
  if (data_.rows() != D || data_.cols() != D)
    throw DimensionError("DensityMatrix: matrix shape does not match cutoffs");
  const double scale2 = data_.cwiseAbs2().maxCoeff();
  double asym2 = 0.0;
  for_upper_blocks(D, [&](Eigen::Index i, Eigen::Index j) {
    asym2 = std::max(asym2, std::norm(data_(i, j) - std::conj(data_(j, i))));
  });
  if (asym2 > tol.hermitian * tol.hermitian * scale2) throw InvalidArgument("DensityMatrix: matrix is not Hermitian");
  if (std::abs(data_.trace() - 1.0) > tol.trace)
    throw InvalidArgument("DensityMatrix: trace is not 1 (got " + std::to_string(data_.trace().real()) + ")");
}

DensityMatrix DensityMatrix::normalized(ModeCutoffs cutoffs, CMatrix data, const Tolerances& tol) {
  if (data.rows() != data.cols()) throw DimensionError("DensityMatrix: matrix is not square");
  // In-place (rho + rho^H)/2; dense states of many modes are too large for temporaries.
  for_upper_blocks(data.rows(), [&](Eigen::Index i, Eigen::Index j) {
    const cplx v = 0.5 * (data(i, j) + std::conj(data(j, i)));
    data(i, j) = v;
    data(j, i) = std::conj(v);
  });
  double tr = data.trace().real();
  if (!(tr > 0.0)) throw InvalidArgument("DensityMatrix: non-positive trace");
  data /= tr;
  return DensityMatrix(std::move(cutoffs), std::move(data), tol);
}

DensityMatrix DensityMatrix::from_ket(const Ket& ket) {
  const CVector& v = ket.amplitudes();
  return DensityMatrix::normalized(ket.cutoffs(), v * v.adjoint());
}

double DensityMatrix::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(data_, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

void DensityMatrix::check_positive(const Tolerances& tol) const {
  double lo = min_eigenvalue();
  if (lo < tol.positivity)
    throw InvalidArgument("DensityMatrix: eigenvalue " + std::to_string(lo) + " below positivity floor");
}

CMatrix annihilation_op(const ModeCutoffs& cutoffs, int mode) {
  if (mode < 0 || mode >= cutoffs.modes()) throw InvalidArgument("annihilation_op: mode out of range");
  auto D = static_cast<Eigen::Index>(cutoffs.total());
  CMatrix a = CMatrix::Zero(D, D);
  std::size_t s = cutoffs.stride(mode);
  for (std::size_t j = 0; j < cutoffs.total(); ++j) {
    int n = cutoffs.level(j, mode);
    if (n > 0) a(static_cast<Eigen::Index>(j - s), static_cast<Eigen::Index>(j)) = std::sqrt(double(n));
  }
  return a;
}

CMatrix creation_op(const ModeCutoffs& cutoffs, int mode) { return annihilation_op(cutoffs, mode).adjoint(); }

CMatrix mode_number_op(const ModeCutoffs& cutoffs, int mode) {
  if (mode < 0 || mode >= cutoffs.modes()) throw InvalidArgument("mode_number_op: mode out of range");
  auto D = static_cast<Eigen::Index>(cutoffs.total());
  CMatrix n = CMatrix::Zero(D, D);
  for (Eigen::Index j = 0; j < D; ++j) n(j, j) = cutoffs.level(static_cast<std::size_t>(j), mode);
  return n;
}

CMatrix number_op(const ModeCutoffs& cutoffs) {
  auto D = static_cast<Eigen::Index>(cutoffs.total());
  CMatrix n = CMatrix::Zero(D, D);
  for (Eigen::Index j = 0; j < D; ++j) n(j, j) = cutoffs.total_number(static_cast<std::size_t>(j));
  return n;
}

double mean_number(const DensityMatrix& rho) {
  const auto& c = rho.cutoffs();
  double s = 0.0;
  for (std::size_t j = 0; j < c.total(); ++j) {
    auto k = static_cast<Eigen::Index>(j);
    s += c.total_number(j) * rho.matrix()(k, k).real();
  }
  return s;
}

double purity(const DensityMatrix& rho) {
  // Tr(rho^2) = sum |rho_ij|^2 for Hermitian rho.
  return rho.matrix().squaredNorm();
}

double top_level_population(const DensityMatrix& rho, int mode) {
  const auto& c = rho.cutoffs();
  int d = c.dim(mode);
  double p = 0.0;
  for (std::size_t j = 0; j < c.total(); ++j) {
    int n = c.level(j, mode);
    if (n >= d - 2 && n >= 1) {
      auto k = static_cast<Eigen::Index>(j);
      p += rho.matrix()(k, k).real();
    }
  }
  return p;
}

int suggest_cutoff(double mean_n) {
  if (mean_n < 0.0) mean_n = 0.0;
  return static_cast<int>(std::ceil(mean_n + 6.0 * std::sqrt(mean_n) + 10.0));
}

int default_cutoff(double mean_n) {
  if (const char* env = std::getenv("MACROQ_DEFAULT_CUTOFF")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1) return static_cast<int>(v);
    throw InvalidArgument(std::string("MACROQ_DEFAULT_CUTOFF is not a positive integer: ") + env);
  }
  return suggest_cutoff(mean_n);
}

CMatrix displacement_matrix(cplx beta, int dim) {
  if (dim < 1) throw InvalidArgument("displacement_matrix: dim must be >= 1");
  return kernels::parallel::displacement_matrix(beta, dim);
}

CMatrix apply_mode_left(const CMatrix& x, const CMatrix& op, const ModeCutoffs& cutoffs, int mode) {
  return kernels::parallel::apply_mode_left(x, op, cutoffs, mode);
}

DensityMatrix apply_displacement(const DensityMatrix& rho, std::span<const cplx> beta, const Tolerances& tol) {
  const auto& c = rho.cutoffs();
  if (static_cast<int>(beta.size()) != c.modes())
    throw InvalidArgument("apply_displacement: need one displacement per mode");
  CMatrix out = rho.matrix();
  for (int m = 0; m < c.modes(); ++m) {
    if (beta[static_cast<std::size_t>(m)] == cplx{}) continue;
    CMatrix d = displacement_matrix(beta[static_cast<std::size_t>(m)], c.dim(m));
    // D rho D^H = D (D rho)^H for Hermitian rho.
    CMatrix left = apply_mode_left(out, d, c, m);
    out = apply_mode_left(left.adjoint(), d, c, m);
  }
  double leak = 1.0 - out.trace().real();
  if (std::abs(leak) > tol.displacement_leak)
    throw TruncationError("apply_displacement: truncation leak " + std::to_string(leak) +
                          " exceeds tolerance; increase the cutoff");
  return DensityMatrix::normalized(c, std::move(out), tol);
}

DensityMatrix apply_rotation(const DensityMatrix& rho, std::span<const double> theta) {
  const auto& c = rho.cutoffs();
  if (static_cast<int>(theta.size()) != c.modes())
    throw InvalidArgument("apply_rotation: need one angle per mode");
  auto D = static_cast<Eigen::Index>(c.total());
  CVector phase(D);
  for (Eigen::Index j = 0; j < D; ++j) {
    double ph = 0.0;
    for (int m = 0; m < c.modes(); ++m)
      ph += theta[static_cast<std::size_t>(m)] * c.level(static_cast<std::size_t>(j), m);
    phase(j) = std::polar(1.0, ph);
  }
  CMatrix out = phase.asDiagonal() * rho.matrix() * phase.conjugate().asDiagonal();
  return DensityMatrix::normalized(c, std::move(out));
}

namespace {

ModeCutoffs concat(const ModeCutoffs& a, const ModeCutoffs& b) {
  std::vector<int> dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  return ModeCutoffs(std::move(dims));
}

}  // namespace

Ket tensor(const Ket& a, const Ket& b) {
  const CVector& u = a.amplitudes();
  const CVector& v = b.amplitudes();
  CVector out(u.size() * v.size());
  for (Eigen::Index i = 0; i < u.size(); ++i) out.segment(i * v.size(), v.size()) = u(i) * v;
  return Ket::normalized(concat(a.cutoffs(), b.cutoffs()), std::move(out));
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  const CMatrix& x = a.matrix();
  const CMatrix& y = b.matrix();
  CMatrix out(x.rows() * y.rows(), x.cols() * y.cols());
  for (Eigen::Index i = 0; i < x.rows(); ++i)
    for (Eigen::Index j = 0; j < x.cols(); ++j)
      out.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) = x(i, j) * y;
  return DensityMatrix::normalized(concat(a.cutoffs(), b.cutoffs()), std::move(out));
}

}  // namespace macroq

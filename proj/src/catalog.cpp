#include "macroq/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/special_functions/laguerre.hpp>
#include <unsupported/Eigen/MatrixFunctions>

#include "macroq/error.hpp"

namespace macroq {

GaussianChar::GaussianChar(double A, double B) : A_(A), B_(B) {
  if (!(A > 0.0) || !(B > 0.0)) throw InvalidArgument("GaussianChar: A and B must be positive");
  if (A * B < 1.0 - 1e-12) throw InvalidArgument("GaussianChar: AB must be >= 1");
}

ThermalSCSParams::ThermalSCSParams(double V_, double d_) : V(V_), d(d_) {
  if (!(V >= 1.0)) throw InvalidArgument("ThermalSCSParams: V must be >= 1");
  if (!(d >= 0.0)) throw InvalidArgument("ThermalSCSParams: d must be >= 0");
}

DecoheredSCSParams::DecoheredSCSParams(double alpha_, double tau_) : alpha(alpha_), tau(tau_) {
  if (!(alpha > 0.0)) throw InvalidArgument("DecoheredSCSParams: alpha must be > 0");
  if (!(tau >= 0.0)) throw InvalidArgument("DecoheredSCSParams: tau must be >= 0");
}

namespace {

void require_cutoff(int cutoff, double mean_n, const char* what) {
  if (cutoff < suggest_cutoff(mean_n))
    throw TruncationError(std::string(what) + ": cutoff " + std::to_string(cutoff) + " below suggested " +
                          std::to_string(suggest_cutoff(mean_n)));
}

// Truncated (unnormalized) coherent amplitudes e^{-|a|^2/2} a^n / sqrt(n!).
CVector coherent_amplitudes(cplx alpha, int cutoff) {
  CVector v = CVector::Zero(cutoff);
  const double r = std::abs(alpha), ph = std::arg(alpha);
  if (r == 0.0) {
    v(0) = 1.0;
    return v;
  }
  for (int n = 0; n < cutoff; ++n)
    v(n) = std::polar(std::exp(-0.5 * r * r + n * std::log(r) - 0.5 * std::lgamma(n + 1.0)), n * ph);
  return v;
}

// Gauss-Hermite rule for weight e^{-x^2} by Golub-Welsch.
void gauss_hermite(int n, Eigen::VectorXd& nodes, Eigen::VectorXd& weights) {
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) J(k, k - 1) = J(k - 1, k) = std::sqrt(0.5 * k);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  nodes = es.eigenvalues();
  weights = std::sqrt(std::numbers::pi) * es.eigenvectors().row(0).transpose().array().square();
}

// sinh(x)/sinh(y) for y > 0 without overflow.
double sinh_ratio(double x, double y) {
  if (y < 30.0) return std::sinh(x) / std::sinh(y);
  const double ax = std::abs(x);
  return std::copysign(std::exp(ax - y) * (-std::expm1(-2.0 * ax)) / (-std::expm1(-2.0 * y)), x);
}

// 2x2 Gram bookkeeping for rho = N{|p><p| + |m><m| + G(|p><m| + |m><p|)}, p,m = +-t alpha.
struct CatGram {
  double norm;     // N
  double overlap;  // <m|p> = e^{-2 t^2 alpha^2}
  double gamma;
};

CatGram cat_gram(const DecoheredSCSParams& p) {
  const double ta = p.t() * p.alpha;
  const double g = std::exp(-2.0 * ta * ta);
  return {1.0 / (2.0 + 2.0 * p.gamma() * g), g, p.gamma()};
}

}  // namespace

Ket make_fock(int n, int cutoff) {
  if (n < 0) throw InvalidArgument("make_fock: n must be >= 0");
  if (n >= cutoff) throw TruncationError("make_fock: n must be below the cutoff");
  CVector v = CVector::Zero(cutoff);
  v(n) = 1.0;
  return Ket(ModeCutoffs{cutoff}, std::move(v));
}

Ket make_coherent(cplx alpha, int cutoff) {
  require_cutoff(cutoff, std::norm(alpha), "make_coherent");
  return Ket::normalized(ModeCutoffs{cutoff}, coherent_amplitudes(alpha, cutoff));
}

Ket make_scs(double alpha, int cutoff) {
  require_cutoff(cutoff, alpha * alpha, "make_scs");
  CVector v = coherent_amplitudes(alpha, cutoff) + coherent_amplitudes(-alpha, cutoff);
  return Ket::normalized(ModeCutoffs{cutoff}, std::move(v));
}

DensityMatrix make_decohered_scs(const DecoheredSCSParams& p, int cutoff) {
  const double ta = p.t() * p.alpha;
  require_cutoff(cutoff, ta * ta, "make_decohered_scs");
  const CVector plus = coherent_amplitudes(ta, cutoff);
  const CVector minus = coherent_amplitudes(-ta, cutoff);
  CMatrix rho = plus * plus.adjoint() + minus * minus.adjoint() +
                p.gamma() * (plus * minus.adjoint() + minus * plus.adjoint());
  return DensityMatrix::normalized(ModeCutoffs{cutoff}, std::move(rho));
}

DensityMatrix make_mixture_scs(double alpha, int cutoff) {
  require_cutoff(cutoff, alpha * alpha, "make_mixture_scs");
  const CVector plus = coherent_amplitudes(alpha, cutoff);
  const CVector minus = coherent_amplitudes(-alpha, cutoff);
  return DensityMatrix::normalized(ModeCutoffs{cutoff}, plus * plus.adjoint() + minus * minus.adjoint());
}

DensityMatrix make_maximally_mixed(int dim) {
  if (dim < 1) throw InvalidArgument("make_maximally_mixed: dim must be >= 1");
  return DensityMatrix(ModeCutoffs{dim}, CMatrix::Identity(dim, dim) / double(dim));
}

DensityMatrix make_thermal(double nbar, int cutoff) {
  if (!(nbar >= 0.0)) throw InvalidArgument("make_thermal: nbar must be >= 0");
  CMatrix rho = CMatrix::Zero(cutoff, cutoff);
  const double q = nbar / (nbar + 1.0);
  double w = 1.0;
  for (int n = 0; n < cutoff; ++n, w *= q) rho(n, n) = w;
  return DensityMatrix::normalized(ModeCutoffs{cutoff}, std::move(rho));
}

Ket make_squeezed_vacuum(double s, int cutoff) {
  CVector v = CVector::Zero(cutoff);
  const double th = std::tanh(s);
  for (int k = 0; 2 * k < cutoff; ++k) {
    double mag = std::exp(0.5 * std::lgamma(2.0 * k + 1.0) - k * std::numbers::ln2 - std::lgamma(k + 1.0));
    v(2 * k) = std::pow(th, k) * mag / std::sqrt(std::cosh(s));
  }
  return Ket::normalized(ModeCutoffs{cutoff}, std::move(v));
}

// Levels needed for a geometric tail q^n to drop below 1e-12.
int geometric_cutoff(double q) {
  if (q <= 0.0) return 1;
  return static_cast<int>(std::ceil(std::log(1e-12) / std::log(q))) + 2;
}

int suggest_gaussian_cutoff(const GaussianChar& g) {
  const double nu = std::sqrt(g.A() * g.B()), nbar = 0.5 * (nu - 1.0);
  const double s = 0.25 * std::abs(std::log(g.B() / g.A()));
  int c = suggest_cutoff(g.mean_n());
  if (nbar > 0.0) c = std::max(c, geometric_cutoff(nbar / (nbar + 1.0)) + suggest_cutoff(g.mean_n()));
  if (s > 0.0) c = std::max(c, geometric_cutoff(std::tanh(s)));
  return c;
}

DensityMatrix make_gaussian(const GaussianChar& g, int cutoff) {
  const double nu = std::sqrt(g.A() * g.B());
  if (nu < 1.0 - 1e-10) throw InvalidArgument("make_gaussian: A B must be >= 1");
  const double nbar = std::max(0.0, 0.5 * (nu - 1.0));
  const double s = 0.25 * std::log(g.B() / g.A());
  // Squeeze in an enlarged space, then keep the low block.
  const int big = 2 * cutoff + 40;
  ModeCutoffs bc{big};
  CMatrix a = annihilation_op(bc, 0);
  CMatrix gen = 0.5 * s * (a.adjoint() * a.adjoint() - a * a);
  CMatrix S = gen.exp();
  CMatrix th = make_thermal(nbar, big).matrix();
  CMatrix full = S * th * S.adjoint();
  return DensityMatrix::normalized(ModeCutoffs{cutoff}, full.topLeftCorner(cutoff, cutoff));
}

DensityMatrix make_thermal_scs(const ThermalSCSParams& p, int cutoff, int nodes) {
  if (p.V == 1.0) {
    if (p.d == 0.0) return DensityMatrix::from_ket(make_fock(0, cutoff));
    return DensityMatrix::from_ket(make_scs(p.d, cutoff));
  }
  Eigen::VectorXd x, w;
  gauss_hermite(nodes, x, w);
  const double sigma = std::sqrt(0.5 * (p.V - 1.0));
  CMatrix vecs(cutoff, nodes * nodes);
  for (int i = 0; i < nodes; ++i)
    for (int j = 0; j < nodes; ++j) {
      cplx al{p.d + sigma * x(i), sigma * x(j)};
      vecs.col(i * nodes + j) =
          std::sqrt(w(i) * w(j)) * (coherent_amplitudes(al, cutoff) + coherent_amplitudes(-al, cutoff));
    }
  return DensityMatrix::normalized(ModeCutoffs{cutoff}, vecs * vecs.adjoint());
}

ProductRankState make_dur_state(int N, double epsilon) {
  if (N < 1) throw InvalidArgument("make_dur_state: N must be >= 1");
  if (!(epsilon > 0.0) || epsilon > 0.5 * std::numbers::pi)
    throw InvalidArgument("make_dur_state: epsilon must be in (0, pi/2]");
  CVector f1(2), f2(2);
  f1 << 1.0, 0.0;
  f2 << std::cos(epsilon), std::sin(epsilon);
  return ProductRankState({ProductKet::uniform(f1, N), ProductKet::uniform(f2, N)}, CMatrix::Ones(2, 2));
}

ProductRankState make_ghz(int N) {
  if (N < 1) throw InvalidArgument("make_ghz: N must be >= 1");
  CVector zero(2), one(2);
  zero << 1.0, 0.0;
  one << 0.0, 1.0;
  return ProductRankState({ProductKet::uniform(zero, N), ProductKet::uniform(one, N)}, CMatrix::Ones(2, 2));
}

ProductRankState make_noon(int n) {
  if (n < 1) throw InvalidArgument("make_noon: n must be >= 1");
  CVector vac = CVector::Zero(n + 1), full = CVector::Zero(n + 1);
  vac(0) = 1.0;
  full(n) = 1.0;
  return ProductRankState({ProductKet({full, vac}), ProductKet({vac, full})}, CMatrix::Ones(2, 2));
}

double scs_mean_n(double alpha) { return alpha * alpha * std::tanh(alpha * alpha); }

double closed_form_decohered_scs(const DecoheredSCSParams& p) {
  const double a2 = p.alpha * p.alpha;
  const double e = std::exp(-p.tau);
  return scs_mean_n(p.alpha) * e * sinh_ratio(2.0 * (2.0 * e - 1.0) * a2, 2.0 * a2);
}

double decohered_scs_mean_n(const DecoheredSCSParams& p) {
  const CatGram g = cat_gram(p);
  const double ta2 = std::pow(p.t() * p.alpha, 2);
  // <tα|n|tα> = t²α², <∓tα|n|±tα> = -t²α² <m|p>
  return g.norm * 2.0 * ta2 * (1.0 - g.gamma * g.overlap);
}

double decohered_scs_purity(const DecoheredSCSParams& p) {
  const CatGram g = cat_gram(p);
  Eigen::Matrix2d c, G;
  c << 1.0, g.gamma, g.gamma, 1.0;
  G << 1.0, g.overlap, g.overlap, 1.0;
  return g.norm * g.norm * (c * G * c * G).trace();
}

double gaussian_measure(const GaussianChar& g) {
  const double ab = g.A() * g.B();
  return (g.A() + g.B() - 2.0 * ab) / (4.0 * std::pow(ab, 1.5));
}

GaussianChar gaussian_decohere(const GaussianChar& g, double tau) {
  if (!(tau >= 0.0)) throw InvalidArgument("gaussian_decohere: tau must be >= 0");
  const double t2 = std::exp(-tau);
  const double r2 = -std::expm1(-tau);
  return {r2 + t2 * g.A(), r2 + t2 * g.B()};
}

namespace {

struct ThermalSCSTerms {
  double R, Q, S, U, M;
};

ThermalSCSTerms thermal_scs_terms(const ThermalSCSParams& p) {
  const double V = p.V, R = V - 1.0, S = 4.0 * p.d * p.d / V;
  return {R, (R / V) * (R / V), S, V * V + 1.0, 1.0 / (2.0 + 2.0 / V * std::exp(-0.5 * S))};
}

}  // namespace

double thermal_scs_measure(const ThermalSCSParams& p) {
  const auto [R, Q, S, U, M] = thermal_scs_terms(p);
  const double V = p.V, d2 = p.d * p.d;
  const double cross = 8.0 * std::exp(-V * V * S / U) * R * (R * U + 4.0 * d2 * (V + 1.0)) / (U * U * U);
  return M * M * (std::exp(-S) * (Q - S / (V * V)) + Q + S - cross);
}

double thermal_scs_measure_as_printed(const ThermalSCSParams& p) {
  const auto [R, Q, S, U, M] = thermal_scs_terms(p);
  const double V = p.V, d2 = p.d * p.d;
  const double cross = 8.0 * std::exp(-V * V * S / (U * U * U)) * R * (R * U - 4.0 * d2 * (V + 1.0)) / (U * U * U);
  return M * M * (std::exp(-S) * (Q - S / (V * V)) + Q + S - cross);
}

double thermal_scs_mean_n(const ThermalSCSParams& p) {
  const auto t = thermal_scs_terms(p);
  const double V = p.V, d2 = p.d * p.d;
  return t.M * (V + 2.0 * d2 + std::exp(-0.5 * t.S) * (1.0 / (V * V) - 2.0 * d2 / (V * V * V))) - 0.5;
}

double thermal_scs_purity(const ThermalSCSParams& p) {
  const auto t = thermal_scs_terms(p);
  const double V = p.V;
  return t.M * t.M * (4.0 * (1.0 + std::exp(-t.S)) / V + 16.0 * std::exp(-t.S * V * V / t.U) / t.U);
}

MeasureResult closed_form_result(double value, double mean_n, double purity) {
  MeasureResult r;
  r.value = value;
  r.route = Route::closed_form;
  r.mean_n = mean_n;
  r.purity = purity;
  return r;
}

cplx coherent_dyad_char(cplx beta, cplx gamma, cplx xi) {
  const cplx s = xi + beta;
  return std::exp(0.5 * (xi * std::conj(beta) - std::conj(xi) * beta) - 0.5 * std::norm(gamma) - 0.5 * std::norm(s) +
                  std::conj(gamma) * s);
}

CharFunction char_vacuum() {
  return [](std::span<const cplx> xi) { return cplx{std::exp(-0.5 * std::norm(xi[0]))}; };
}

CharFunction char_fock(int n) {
  if (n < 0) throw InvalidArgument("char_fock: n must be >= 0");
  return [n](std::span<const cplx> xi) {
    const double r2 = std::norm(xi[0]);
    return cplx{std::exp(-0.5 * r2) * boost::math::laguerre(static_cast<unsigned>(n), r2)};
  };
}

CharFunction char_coherent(cplx alpha) {
  return [alpha](std::span<const cplx> xi) { return coherent_dyad_char(alpha, alpha, xi[0]); };
}

CharFunction char_scs(double alpha) {
  const double norm = 1.0 / (2.0 + 2.0 * std::exp(-2.0 * alpha * alpha));
  return [alpha, norm](std::span<const cplx> xi) {
    cplx s = 0.0;
    for (double b : {alpha, -alpha})
      for (double g : {alpha, -alpha}) s += coherent_dyad_char(b, g, xi[0]);
    return norm * s;
  };
}

CharFunction char_decohered_scs(const DecoheredSCSParams& p) {
  const CatGram g = cat_gram(p);
  const double ta = p.t() * p.alpha;
  return [g, ta](std::span<const cplx> xi) {
    const cplx z = xi[0];
    return g.norm * (coherent_dyad_char(ta, ta, z) + coherent_dyad_char(-ta, -ta, z) +
                     g.gamma * (coherent_dyad_char(ta, -ta, z) + coherent_dyad_char(-ta, ta, z)));
  };
}

CharFunction char_mixture_scs(double alpha) {
  return [alpha](std::span<const cplx> xi) {
    return 0.5 * (coherent_dyad_char(alpha, alpha, xi[0]) + coherent_dyad_char(-alpha, -alpha, xi[0]));
  };
}

CharFunction char_gaussian(const GaussianChar& g) {
  return [A = g.A(), B = g.B()](std::span<const cplx> xi) {
    const double x = xi[0].real(), y = xi[0].imag();
    return cplx{std::exp(-0.5 * A * x * x - 0.5 * B * y * y)};
  };
}

CharFunction char_thermal_scs(const ThermalSCSParams& p) {
  const double M = thermal_scs_terms(p).M, S = thermal_scs_terms(p).S, V = p.V, d = p.d;
  return [M, S, V, d](std::span<const cplx> xi) {
    const double x = xi[0].real(), y = xi[0].imag(), r2 = x * x + y * y;
    return cplx{M * (2.0 * std::exp(-0.5 * V * r2) * std::cos(2.0 * d * y) +
                     2.0 / V * std::exp(-0.5 * S - 0.5 * r2 / V) * std::cosh(2.0 * d * x / V))};
  };
}

CharFunction char_product(std::vector<CharFunction> per_mode) {
  return [fs = std::move(per_mode)](std::span<const cplx> xi) {
    cplx p = 1.0;
    for (std::size_t m = 0; m < fs.size(); ++m) p *= fs[m](xi.subspan(m, 1));
    return p;
  };
}

}  // namespace macroq

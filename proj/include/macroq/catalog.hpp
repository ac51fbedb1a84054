#pragma once

// State families with known behaviour of I, plus the closed forms and the
// analytic characteristic functions that serve as oracles for the numeric
// routes.
//
// Conventions: chi(xi) = Tr[rho exp(xi a^H - xi^* a)], xi = xi_r + i xi_i.
// A single-mode Gaussian has chi = exp(-A xi_r^2/2 - B xi_i^2/2); the vacuum
// is A = B = 1 and the squeezed vacuum of parameter s is A = e^{-2s}, B = e^{2s}.

#include <functional>
#include <span>

#include "macroq/fock.hpp"
#include "macroq/product_rank.hpp"
#include "macroq/result.hpp"

namespace macroq {

/// chi over M modes; the span holds one complex argument per mode.
using CharFunction = std::function<cplx(std::span<const cplx>)>;

class GaussianChar {
 public:
  /// Requires A > 0, B > 0 and AB >= 1 (pure when AB = 1).
  GaussianChar(double A, double B);
  static GaussianChar squeezed(double s) { return {std::exp(-2.0 * s), std::exp(2.0 * s)}; }
  static GaussianChar thermal(double nbar) { return {2.0 * nbar + 1.0, 2.0 * nbar + 1.0}; }

  double A() const { return A_; }
  double B() const { return B_; }
  double mean_n() const { return 0.25 * (A_ + B_) - 0.5; }
  double purity() const { return 1.0 / std::sqrt(A_ * B_); }

 private:
  double A_;
  double B_;
};

/// Superposition of two thermal components of variance V centred at +-d.
struct ThermalSCSParams {
  double V = 1.0;
  double d = 0.0;
  ThermalSCSParams(double V_, double d_);
};

/// SCS of amplitude alpha after dimensionless time tau of vacuum damping.
struct DecoheredSCSParams {
  double alpha = 0.0;
  double tau = 0.0;
  DecoheredSCSParams(double alpha_, double tau_);
  double t() const { return std::exp(-0.5 * tau); }
  double gamma() const { return std::exp(-2.0 * (1.0 - std::exp(-tau)) * alpha * alpha); }
};

// --- constructors (single mode, dense) -------------------------------------

Ket make_fock(int n, int cutoff);
Ket make_coherent(cplx alpha, int cutoff);
/// (|alpha> + |-alpha>)/sqrt(2 + 2 e^{-2 alpha^2}); requires cutoff >= suggest_cutoff(alpha^2).
Ket make_scs(double alpha, int cutoff);
DensityMatrix make_decohered_scs(const DecoheredSCSParams& p, int cutoff);
/// rho proportional to |alpha><alpha| + |-alpha><-alpha|.
DensityMatrix make_mixture_scs(double alpha, int cutoff);
DensityMatrix make_maximally_mixed(int dim);
DensityMatrix make_thermal(double nbar, int cutoff);
/// Squeezed vacuum with chi = exp(-e^{-2s} xi_r^2/2 - e^{2s} xi_i^2/2). No
/// cutoff check: the truncation shows up in measure_operator's warnings.
Ket make_squeezed_vacuum(double s, int cutoff);
/// Centred Gaussian state (squeezed thermal) with the given chi parameters.
DensityMatrix make_gaussian(const GaussianChar& g, int cutoff);
/// Fock-basis version of the thermal-component superposition, from a
/// Gauss-Hermite rule over the component ensemble (`nodes` per axis).
DensityMatrix make_thermal_scs(const ThermalSCSParams& p, int cutoff, int nodes = 48);

// --- multi-mode (product-rank) ---------------------------------------------

/// K(|0>^N + (cos e|0> + sin e|1>)^N), K from the Gram matrix.
ProductRankState make_dur_state(int N, double epsilon);
ProductRankState make_ghz(int N);
/// (|n,0> + |0,n>)/sqrt(2).
ProductRankState make_noon(int n);

// --- closed forms ----------------------------------------------------------

/// <n(0)> e^{-tau} sinh[2(2e^{-tau} - 1) alpha^2] / sinh[2 alpha^2], <n(0)> = alpha^2 tanh alpha^2.
double closed_form_decohered_scs(const DecoheredSCSParams& p);
double decohered_scs_mean_n(const DecoheredSCSParams& p);
double decohered_scs_purity(const DecoheredSCSParams& p);
double scs_mean_n(double alpha);

/// Levels needed for a geometric tail q^n to drop below 1e-12.
int geometric_cutoff(double q);
/// Cutoff that holds a centred Gaussian state to about 1e-12 in population.
int suggest_gaussian_cutoff(const GaussianChar& g);

/// (A + B - 2AB) / [4 (AB)^{3/2}].
double gaussian_measure(const GaussianChar& g);
/// Vacuum damping of a centred Gaussian: A -> r^2 + t^2 A, B -> r^2 + t^2 B
/// with t^2 = e^{-tau}, r^2 = 1 - e^{-tau}.
GaussianChar gaussian_decohere(const GaussianChar& g, double tau);

/// Closed form of I for the thermal-component superposition (corrected; see
/// `thermal_scs_measure_as_printed`).
double thermal_scs_measure(const ThermalSCSParams& p);
/// The same expression with the last term exactly as it appears in print:
/// exponent -V^2 S / U^3 and bracket {RU - 4d^2(V+1)}. It disagrees with the
/// quadrature of the state's characteristic function and is kept only so the
/// discrepancy stays documented by a test.
double thermal_scs_measure_as_printed(const ThermalSCSParams& p);
double thermal_scs_mean_n(const ThermalSCSParams& p);
double thermal_scs_purity(const ThermalSCSParams& p);

MeasureResult closed_form_result(double value, double mean_n, double purity);

// --- analytic characteristic functions (single mode) -----------------------

CharFunction char_vacuum();
CharFunction char_fock(int n);
CharFunction char_coherent(cplx alpha);
CharFunction char_scs(double alpha);
CharFunction char_decohered_scs(const DecoheredSCSParams& p);
CharFunction char_mixture_scs(double alpha);
CharFunction char_gaussian(const GaussianChar& g);
CharFunction char_thermal_scs(const ThermalSCSParams& p);
/// chi of a product state: the product of the per-mode functions.
CharFunction char_product(std::vector<CharFunction> per_mode);

/// Tr[|beta><gamma| D(xi)] = <gamma|D(xi)|beta> for coherent states.
cplx coherent_dyad_char(cplx beta, cplx gamma, cplx xi);

}  // namespace macroq

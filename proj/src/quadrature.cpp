#include <cmath>
#include <numbers>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/trapezoidal.hpp>

#include "macroq/error.hpp"
#include "macroq/measure.hpp"

namespace macroq {

namespace {

using boost::math::quadrature::gauss_kronrod;
using boost::math::quadrature::trapezoidal;

// Integral over C^M of f(xi) d^2M xi in nested polar coordinates; mode 0 is
// outermost and may be restricted to a shell [r0, r1].
class PolarIntegrator {
 public:
  PolarIntegrator(std::function<double(std::span<const cplx>)> f, int modes, double cut, const QuadratureOptions& o)
      : f_(std::move(f)), modes_(modes), cut_(cut), opt_(o), xi_(static_cast<std::size_t>(modes)) {}

  double run(double r0, double r1, double& err, double& l1) { return mode(0, r0, r1, &err, &l1); }

 private:
  double mode(int m, double r0, double r1, double* err_out, double* l1_out) {
    auto um = static_cast<std::size_t>(m);
    auto radial = [&](double r) {
      auto angular = [&](double phi) {
        xi_[um] = std::polar(r, phi);
        return m + 1 == modes_ ? f_(xi_) : mode(m + 1, 0.0, cut_, nullptr, nullptr);
      };
      if (r == 0.0) return 0.0;
      return r * trapezoidal(angular, 0.0, 2.0 * std::numbers::pi, opt_.tol, 14);
    };
    double err = 0.0, l1 = 0.0;
    double v = gauss_kronrod<double, 15>::integrate(radial, r0, r1, opt_.max_depth, opt_.tol, &err, &l1);
    if (err_out) *err_out = err;
    if (l1_out) *l1_out = l1;
    return v;
  }

  std::function<double(std::span<const cplx>)> f_;
  int modes_;
  double cut_;
  QuadratureOptions opt_;
  std::vector<cplx> xi_;
};

// Laplacian of Re chi at the origin along mode m (five-point stencil per axis).
double laplacian_at_origin(const CharFunction& chi, int modes, int m) {
  const double h = 1e-2;
  std::vector<cplx> xi(static_cast<std::size_t>(modes));
  auto at = [&](cplx z) {
    xi[static_cast<std::size_t>(m)] = z;
    return chi(xi).real();
  };
  const double c0 = at(0.0);
  double lap = 0.0;
  for (cplx dir : {cplx{1.0, 0.0}, cplx{0.0, 1.0}})
    lap += (-at(2.0 * h * dir) + 16.0 * at(h * dir) - 30.0 * c0 + 16.0 * at(-h * dir) - at(-2.0 * h * dir)) /
           (12.0 * h * h);
  return lap;
}

}  // namespace

MeasureResult measure_char_quadrature(const CharFunction& chi, int modes, const QuadratureOptions& opt) {
  if (modes < 1) throw InvalidArgument("measure_char_quadrature: modes must be >= 1");
  if (!(opt.radial_cut > 0.0)) throw InvalidArgument("measure_char_quadrature: radial_cut must be > 0");
  const double pm = std::pow(std::numbers::pi, modes);

  auto weighted = [&](std::span<const cplx> xi) {
    double w = 0.0;
    for (cplx z : xi) w += std::norm(z) - 1.0;
    return w * std::norm(chi(xi));
  };
  auto modulus = [&](std::span<const cplx> xi) { return std::norm(chi(xi)); };

  double cut = opt.radial_cut;
  double value = 0.0, err = 0.0, l1 = 0.0, tail = 0.0;
  for (int attempt = 0;; ++attempt) {
    PolarIntegrator integ(weighted, modes, cut, opt);
    value = integ.run(0.0, cut, err, l1);
    double terr = 0.0, tl1 = 0.0;
    tail = integ.run(cut, 1.5 * cut, terr, tl1);
    if (!opt.auto_extend || std::abs(tail) <= opt.tol * std::max(1.0, std::abs(value)) || attempt == 4) break;
    cut *= 2.0;
  }

  MeasureResult r;
  r.route = Route::char_quadrature;
  r.value = value / (2.0 * pm);
  r.err_estimate = (err + std::abs(tail)) / (2.0 * pm);
  if (err > 10.0 * opt.tol * std::max(1.0, l1))
    throw ConvergenceError("measure_char_quadrature: error estimate " + std::to_string(err / (2.0 * pm)) +
                               " above tolerance",
                           r.value, r.err_estimate);
  if (std::abs(tail) > opt.tol * std::max(1.0, std::abs(value)))
    r.warnings.push_back("shell beyond radial cut " + std::to_string(cut) + " contributes " +
                         std::to_string(tail / (2.0 * pm)));

  double perr = 0.0, pl1 = 0.0;
  PolarIntegrator pinteg(modulus, modes, cut, opt);
  r.purity = pinteg.run(0.0, cut, perr, pl1) / pm;
  for (int m = 0; m < modes; ++m) r.mean_n += -0.25 * laplacian_at_origin(chi, modes, m) - 0.5;
  return r;
}

}  // namespace macroq

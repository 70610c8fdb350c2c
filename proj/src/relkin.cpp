#include "atomscope/relkin.hpp"

#include <algorithm>
#include <cmath>

#include "atomscope/common.hpp"

namespace atomscope::relkin {

using constants::pi;

KineticSymbol::KineticSymbol(double a) : alpha(a) {
  if (!(a > 0.0)) throw param_error("KineticSymbol: alpha must be > 0");
}

double KineticSymbol::operator()(double p) const {
  if (p < 0.0) throw param_error("kinetic_symbol: p must be >= 0");
  const double ainv = 1.0 / alpha;
  return p * p / (std::hypot(p, ainv) + ainv);
}

double kinetic_symbol(double p, double alpha) {
  return KineticSymbol(alpha)(p);
}

double daubechies_g(double t) {
  if (t < 0.0) throw param_error("daubechies_g: t must be >= 0");
  return t * std::sqrt(1.0 + t * t) * (1.0 + 2.0 * t * t) - std::asinh(t);
}

double daubechies_g_excess(double t) {
  if (t < 0.0) throw param_error("daubechies_g_excess: t must be >= 0");
  if (t < 0.1) {
    // g(t) - 8/3 t^3 = 4/5 t^5 - 1/7 t^7 + 1/18 t^9 - 5/176 t^11 + 7/416 t^13 ...
    const double t2 = t * t;
    return t2 * t2 * t *
           (4.0 / 5.0 +
            t2 * (-1.0 / 7.0 +
                  t2 * (1.0 / 18.0 +
                        t2 * (-5.0 / 176.0 + t2 * (7.0 / 416.0)))));
  }
  return daubechies_g(t) - (8.0 / 3.0) * t * t * t;
}

DaubechiesFunctional::DaubechiesFunctional(double alpha_, int q_)
    : q(q_), alpha(alpha_), C(0.163 * q_) {
  if (!(alpha_ > 0.0)) throw param_error("DaubechiesFunctional: alpha <= 0");
  if (q_ < 1) throw param_error("DaubechiesFunctional: q < 1");
}

double DaubechiesFunctional::operator()(double rho) const {
  if (rho < 0.0) throw param_error("daubechies_G: rho must be >= 0");
  if (rho == 0.0) return 0.0;
  const double t = alpha * std::cbrt(rho / C);
  // (3/8) alpha^-4 C (8/3) t^3 == rho/alpha exactly, so only the excess
  // survives; this avoids the catastrophic cancellation at small alpha.
  return 0.375 * C / (alpha * alpha * alpha * alpha) * daubechies_g_excess(t);
}

double daubechies_G(double rho, double alpha, int q) {
  return DaubechiesFunctional(alpha, q)(rho);
}

GSandwich daubechies_G_sandwich(double rho, double alpha, int q) {
  DaubechiesFunctional G(alpha, q);
  const double m = std::min(alpha * std::pow(G.C, -2.0 / 3.0) *
                                std::pow(rho, 5.0 / 3.0) / 5.0,
                            std::pow(G.C, -1.0 / 3.0) *
                                std::pow(rho, 4.0 / 3.0) / 2.0);
  return {0.45 * m, G(rho), 1.5 * m};
}

double lt_F(double s, double alpha, const quadrature::Options& opt) {
  if (s < 0.0) throw param_error("lt_F: s must be >= 0");
  if (!(alpha > 0.0)) throw param_error("lt_F: alpha must be > 0");
  if (s == 0.0) return 0.0;
  const double two_over_a = 2.0 / alpha;
  return quadrature::integrate(
      [&](double t) { return std::pow(t * (t + two_over_a), 1.5); }, 0.0, s,
      opt);
}

double lt_F_bound(double s, double alpha) {
  return 1.6 * std::pow(alpha, -1.5) * std::pow(s, 2.5) +
         s * s * s * s / (2.0 * std::sqrt(2.0));
}

double bessel_K2(double t, const quadrature::Options& opt) {
  if (!(t > 0.0)) throw param_error("bessel_K2: t must be > 0");
  // substitute s = sinh(w): K2(t) = t int_0^W exp(-t cosh w) sinh^2 w cosh w dw
  const double arg = 750.0 / t + 1.0;
  const double wmax = std::log(arg + std::sqrt(arg * arg - 1.0));
  return t * quadrature::integrate(
                 [&](double w) {
                   const double sh = std::sinh(w);
                   return std::exp(-t * std::cosh(w)) * sh * sh * std::cosh(w);
                 },
                 0.0, wmax, opt);
}

double bessel_K2_moment2() {
  quadrature::Options inner{1e-11, 1e-300, 4000};
  quadrature::Options outer{1e-10, 1e-300, 4000};
  // integrand ~ 2 at t=0 (K2 ~ 2/t^2) and decays like e^{-t}; cut at t=60
  return quadrature::integrate(
      [&](double t) {
        return t <= 0.0 ? 2.0 : t * t * bessel_K2(t, inner);
      },
      0.0, 60.0, outer);
}

namespace {

// Integral of the profile from 0 to r_max including a virtual node g(0)=0.
// Composite Simpson when the mesh (with the origin prepended) is uniform,
// trapezoid otherwise.
double radial_integral(const std::vector<double>& r,
                       const std::vector<double>& g) {
  const std::size_t n = r.size();
  const double h = r[0];
  bool uniform = true;
  for (std::size_t i = 0; i + 1 < n && uniform; ++i)
    uniform = std::abs(r[i + 1] - r[i] - h) <= 1e-9 * h;
  if (!uniform) {
    double s = 0.5 * r[0] * g[0];
    for (std::size_t i = 0; i + 1 < n; ++i)
      s += 0.5 * (r[i + 1] - r[i]) * (g[i] + g[i + 1]);
    return s;
  }
  // nodes j = 0..n at jh with values v(0) = 0, v(j) = g[j-1]
  auto v = [&](std::size_t j) { return j == 0 ? 0.0 : g[j - 1]; };
  const std::size_t simpson_end = (n % 2 == 0) ? n : n - 1;
  double s = 0.0;
  for (std::size_t k = 0; k + 2 <= simpson_end; k += 2)
    s += h / 3.0 * (v(k) + 4.0 * v(k + 1) + v(k + 2));
  if (n % 2 == 1) s += 0.5 * h * (v(n - 1) + v(n));  // decayed last interval
  return s;
}

// fhat(p) = sqrt(2/pi) (1/p) int_0^inf f(s) sin(p s) s ds.
// Trapezoid, not Simpson: for smooth decaying profiles on a uniform mesh the
// trapezoid error is pure aliasing (spectrally small), while Simpson's
// frequency response degrades near the grid Nyquist.
double fourier_radial(const std::vector<double>& r,
                      const std::vector<double>& f, double p) {
  const std::size_t n = r.size();
  double s = 0.0;
  double prev_r = 0.0, prev_g = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double g = f[i] * std::sin(p * r[i]) * r[i];
    s += 0.5 * (r[i] - prev_r) * (g + prev_g);
    prev_r = r[i];
    prev_g = g;
  }
  return std::sqrt(2.0 / pi) / p * s;
}

void validate_profile(const std::vector<double>& r,
                      const std::vector<double>& f) {
  if (r.size() != f.size() || r.size() < 8)
    throw param_error("radial profile: size mismatch or too few samples");
  std::vector<double> g(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) g[i] = f[i] * f[i] * r[i] * r[i];
  const double norm2 = 4.0 * pi * radial_integral(r, g);
  if (!(norm2 > 0.0) || !std::isfinite(norm2))
    throw param_error("radial profile: not normalizable");
}

}  // namespace

double momentum_weighted_norm(const std::vector<double>& r,
                              const std::vector<double>& f, double weight_pow,
                              double alpha, bool relativistic_symbol) {
  validate_profile(r, f);
  KineticSymbol T(alpha);
  // |fhat(p)|^2 decays at least like p^-8 for bounded profiles; the grid
  // itself cuts wavelengths below the spacing, so integrate to ~pi/h.
  const double h = r[1] - r[0];
  const double pmax = pi / std::max(h, 1e-6);
  auto integrand = [&](double p) {
    if (p <= 0.0) return 0.0;
    const double fh = fourier_radial(r, f, p);
    const double w = relativistic_symbol ? T(p) : std::pow(p, weight_pow);
    return 4.0 * pi * p * p * w * fh * fh;
  };
  return quadrature::integrate(integrand, 0.0, pmax, {1e-9, 1e-13, 2000});
}

InequalityCheck check_kato(const std::vector<double>& r,
                           const std::vector<double>& f, double alpha) {
  validate_profile(r, f);
  std::vector<double> g(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) g[i] = f[i] * f[i] * r[i];
  const double lhs = 4.0 * pi * radial_integral(r, g);
  const double rhs =
      constants::kato_constant * momentum_weighted_norm(r, f, 1.0, alpha, false);
  return {lhs, rhs, lhs <= rhs * (1.0 + 1e-9)};
}

InequalityCheck check_herbst_constant(const std::vector<double>& r,
                                      const std::vector<double>& f,
                                      double alpha) {
  validate_profile(r, f);
  const double mu = 1.0 / (pi * alpha * alpha);
  std::vector<double> g(r.size());
  for (std::size_t i = 0; i < r.size(); ++i)
    g[i] = std::exp(-mu * r[i] * r[i]) * f[i] * f[i] * r[i];
  const double lhs = 4.0 * pi * radial_integral(r, g);
  const double rhs = 0.5 * pi / (std::sqrt(2.0) - 1.0) *
                     momentum_weighted_norm(r, f, 0.0, alpha, true);
  return {lhs, rhs, lhs <= rhs * (1.0 + 1e-9)};
}

}  // namespace atomscope::relkin

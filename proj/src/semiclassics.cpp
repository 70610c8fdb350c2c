#include "atomscope/semiclassics.hpp"

#include <algorithm>
#include <cmath>

#include "atomscope/common.hpp"
#include "atomscope/quadrature.hpp"

namespace atomscope::semiclassics {

using constants::pi;

namespace {

double windowed_power_integral(const radial::RadialFunction& phi, double p,
                               const RadialWindow& w) {
  double s = 0.0;
  for (int i = 0; i < phi.grid->n(); ++i) {
    const double r = phi.grid->r[i];
    if (r < w.lo || r > w.hi) continue;
    const double v = std::max(phi.v[i], 0.0);
    if (v > 0.0) s += phi.grid->w_vol[i] * std::pow(v, p);
  }
  return s;
}

}  // namespace

double weyl_term(const radial::RadialFunction& phi, int q,
                 const RadialWindow& window) {
  if (q < 1) throw param_error("weyl_term: q must be >= 1");
  return -std::pow(2.0, 1.5) * q / (15.0 * pi * pi) *
         windowed_power_integral(phi, 2.5, window);
}

Corrections relativistic_corrections(const radial::RadialFunction& phi, int q,
                                     double alpha, const RadialWindow& window,
                                     double prefactor) {
  if (q < 1) throw param_error("relativistic_corrections: q must be >= 1");
  if (alpha < 0.0) throw param_error("relativistic_corrections: alpha < 0");
  if (!(window.lo > 0.0))
    throw param_error(
        "relativistic_corrections: window must exclude a core ball (lo > 0); "
        "the integrands diverge at the origin for Coulombic potentials");
  if (alpha == 0.0) return {0.0, 0.0};
  const double a2 = alpha * alpha;
  const double c72 = prefactor * std::pow(2.0, -1.5) * q / (pi * pi) * a2;
  const double c92 = prefactor * std::pow(2.0, -4.5) * q / (pi * pi) * a2 * a2;
  return {c72 * windowed_power_integral(phi, 3.5, window),
          c92 * windowed_power_integral(phi, 4.5, window)};
}

PhaseSpaceBudget phase_space_budget(const radial::RadialFunction& phi, int q,
                                    double alpha, const RadialWindow& window) {
  const auto c = relativistic_corrections(phi, q, alpha, window);
  return {weyl_term(phi, q, window), c.corr72, c.corr92};
}

double dly_bound(const radial::RadialFunction& U, double alpha, double kappa,
                 double R, double C) {
  if (!(alpha > 0.0) || !(R > 0.0) || C <= 0.0)
    throw param_error("dly_bound: need alpha, R, C > 0");
  if (kappa < 0.0 || kappa > constants::kappa_critical)
    throw param_error("dly_bound: kappa must be in [0, 2/pi]");
  const double inner = std::max(alpha, R);
  for (int i = 0; i < U.grid->n(); ++i) {
    const double r = U.grid->r[i];
    if (r >= inner) break;
    if (U.v[i] < -1e-12 || U.v[i] > kappa / r * (1.0 + 1e-12))
      throw param_error("dly_bound: U violates 0 <= U <= kappa/|x| inside "
                        "max(alpha, R)");
  }
  double outer = 0.0;
  for (int i = 0; i < U.grid->n(); ++i) {
    const double r = U.grid->r[i];
    if (r <= R) continue;
    const double u = std::abs(U.v[i]);
    outer += U.grid->w_vol[i] *
             (std::pow(alpha, -1.5) * std::pow(u, 2.5) + u * u * u * u);
  }
  return -C * std::pow(kappa, 2.5) * std::pow(alpha, -1.5) * std::sqrt(R) -
         C * std::pow(kappa, 4.0) / alpha - C * outer;
}

namespace {

// |(f, g^{p,q})|^2 for 3D Gaussians f, g of widths a, b (both L2-normalized)
// separates:  [2ab/(a^2+b^2)]^3 exp(-(a^2 b^2 |p|^2 + |q|^2)/(a^2+b^2)).
// Integrating with (2 pi)^-3 gives closed-form Gaussian integrals.
struct OverlapParams {
  double amp;  // [2ab/(a^2+b^2)]^3
  double cp;   // a^2 b^2/(a^2+b^2)
  double cq;   // 1/(a^2+b^2)
};

OverlapParams overlap_params(double a, double b) {
  const double s = a * a + b * b;
  OverlapParams o;
  o.amp = std::pow(2.0 * a * b / s, 3.0);
  o.cp = a * a * b * b / s;
  o.cq = 1.0 / s;
  return o;
}

double gaussian_l2_norm2(double a) {
  // (f,f) for f(x) = (pi a^2)^{-3/4} exp(-|x|^2/(2a^2)), by radial quadrature
  const double nf = std::pow(pi * a * a, -0.75);
  return quadrature::integrate(
      [&](double r) {
        const double f = nf * std::exp(-r * r / (2.0 * a * a));
        return 4.0 * pi * r * r * f * f;
      },
      0.0, 12.0 * a, {1e-13, 1e-300, 4000});
}

}  // namespace

CompletenessCheck coherent_completeness_check(double width_f, double width_g) {
  if (!(width_f > 0.0) || !(width_g > 0.0))
    throw param_error("coherent_completeness_check: widths must be > 0");
  const double lhs = gaussian_l2_norm2(width_f);
  const auto o = overlap_params(width_f, width_g);
  // (2 pi)^-3 amp (pi/cp)^{3/2} (pi/cq)^{3/2}
  const double rhs = std::pow(2.0 * pi, -3.0) * o.amp *
                     std::pow(pi * pi / (o.cp * o.cq), 1.5);
  return {lhs, rhs, std::abs(lhs - rhs) / std::abs(rhs)};
}

CompletenessCheck coherent_potential_check(double width_f, double width_g,
                                           double width_v, double v0) {
  if (!(width_f > 0.0) || !(width_g > 0.0) || !(width_v > 0.0))
    throw param_error("coherent_potential_check: widths must be > 0");
  const double a = width_f, b = width_g, c = width_v;
  // lhs = (f, (V*g^2) f) with V(x) = v0 exp(-|x|^2/(2c^2)):
  // V*g^2 is the Gaussian v0 (c^2/(b^2+c^2))^{3/2} exp(-|x|^2/(2(b^2+c^2))).
  const double s = b * b + c * c;
  const double ampc = v0 * std::pow(c * c / s, 1.5);
  const double nf = std::pow(pi * a * a, -0.75);
  const double lhs = quadrature::integrate(
      [&](double r) {
        const double f2 = nf * nf * std::exp(-r * r / (a * a));
        return 4.0 * pi * r * r * ampc * std::exp(-r * r / (2.0 * s)) * f2;
      },
      0.0, 12.0 * std::max(a, std::sqrt(s)), {1e-13, 1e-300, 4000});
  // rhs = (2 pi)^-3 int V(q) |(f, g^{p,q})|^2 dp dq, Gaussian in both factors
  const auto o = overlap_params(a, b);
  const double cq_tot = o.cq + 1.0 / (2.0 * c * c);
  const double rhs = std::pow(2.0 * pi, -3.0) * o.amp * v0 *
                     std::pow(pi / o.cp, 1.5) * std::pow(pi / cq_tot, 1.5);
  return {lhs, rhs, std::abs(lhs - rhs) / std::abs(rhs)};
}

GapRow tf_vs_hf_energy_gap(const thomasfermi::TFSolution& tf,
                           const hartreefock::HFSolution& hf) {
  GapRow row;
  row.Z = hf.Z;
  row.N = hf.N;
  row.alpha = hf.alpha;
  row.e_hf = hf.energy.total;
  row.e_tf = tf.energy;
  row.gap = row.e_hf - row.e_tf;
  row.gap_per_z2 = row.gap / (row.Z * row.Z);
  row.gap_per_z73 = row.gap / std::pow(row.Z, 7.0 / 3.0);
  return row;
}

}  // namespace atomscope::semiclassics

#include "atomscope/radial.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "atomscope/common.hpp"

namespace atomscope::radial {

using constants::pi;

namespace {

constexpr double four_pi = 4.0 * constants::pi;

// exact moments of a linear segment f = fa + (fb-fa)(r-a)/(b-a) on [a,b]
// against r^2 dr, split into the two hat contributions
inline void hat_moments_r2(double a, double b, double& to_left,
                           double& to_right) {
  const double d = b - a;
  const double i3 = (b * b * b - a * a * a) / 3.0;
  const double i4 = (b * b * b * b - a * a * a * a) / 4.0;
  to_left = (b * i3 - i4) / d;   // weight multiplying f(a)
  to_right = (i4 - a * i3) / d;  // weight multiplying f(b)
}

inline void hat_moments_r1(double a, double b, double& to_left,
                           double& to_right) {
  const double d = b - a;
  const double i2 = (b * b - a * a) / 2.0;
  const double i3 = (b * b * b - a * a * a) / 3.0;
  to_left = (b * i2 - i3) / d;
  to_right = (i3 - a * i2) / d;
}

void check_same_grid(const RadialFunction& f, const RadialFunction& g) {
  if (f.grid != g.grid)
    throw kind_error("radial: functions live on different grids");
}

}  // namespace

GridPtr make_grid(double r_max, int n, GridScheme scheme,
                  double r_min_factor) {
  if (!(r_max > 0.0)) throw param_error("make_grid: r_max must be > 0");
  if (n < 16) throw param_error("make_grid: need at least 16 points");
  auto g = std::make_shared<RadialGrid>();
  g->r_max = r_max;
  g->scheme = scheme;
  g->r.resize(n);
  if (scheme == GridScheme::uniform) {
    const double h = r_max / n;
    for (int i = 0; i < n; ++i) g->r[i] = (i + 1) * h;
    g->r[n - 1] = r_max;
  } else {
    if (!(r_min_factor > 0.0 && r_min_factor < 1.0))
      throw param_error("make_grid: r_min_factor must be in (0,1)");
    const double r0 = r_max * r_min_factor;
    const double d = std::log(r_max / r0) / (n - 1);
    for (int i = 0; i < n; ++i) g->r[i] = r0 * std::exp(d * i);
    g->r[n - 1] = r_max;
  }
  // volume-measure weights: exact on the piecewise-linear interpolant,
  // constant extension on [0, r_1]
  g->w_vol.assign(n, 0.0);
  g->w_vol[0] = four_pi * g->r[0] * g->r[0] * g->r[0] / 3.0;
  for (int i = 0; i + 1 < n; ++i) {
    double wl, wr;
    hat_moments_r2(g->r[i], g->r[i + 1], wl, wr);
    g->w_vol[i] += four_pi * wl;
    g->w_vol[i + 1] += four_pi * wr;
  }
  // dr-measure weights: trapezoid with a linear run-in from (0, 0)
  g->w_dr.assign(n, 0.0);
  g->w_dr[0] = 0.5 * g->r[0];
  for (int i = 0; i + 1 < n; ++i) {
    const double half = 0.5 * (g->r[i + 1] - g->r[i]);
    g->w_dr[i] += half;
    g->w_dr[i + 1] += half;
  }
  return g;
}

double integrate_volume(const RadialFunction& f) {
  double s = 0.0;
  for (int i = 0; i < f.grid->n(); ++i) s += f.grid->w_vol[i] * f.v[i];
  return s;
}

namespace {

// cumulative exact moments of the interpolant:
//   M2[i] = int_0^{r_i} 4 pi s^2 f ds,   M1[i] = int_{r_i}^{rmax} 4 pi s f ds
struct Cumulants {
  std::vector<double> M2, M1;
};

Cumulants cumulants(const RadialFunction& f) {
  const auto& r = f.grid->r;
  const int n = f.grid->n();
  Cumulants c;
  c.M2.resize(n);
  c.M1.assign(n, 0.0);
  c.M2[0] = four_pi * f.v[0] * r[0] * r[0] * r[0] / 3.0;
  for (int i = 0; i + 1 < n; ++i) {
    double wl, wr;
    hat_moments_r2(r[i], r[i + 1], wl, wr);
    c.M2[i + 1] = c.M2[i] + four_pi * (wl * f.v[i] + wr * f.v[i + 1]);
  }
  for (int i = n - 2; i >= 0; --i) {
    double wl, wr;
    hat_moments_r1(r[i], r[i + 1], wl, wr);
    c.M1[i] = c.M1[i + 1] + four_pi * (wl * f.v[i] + wr * f.v[i + 1]);
  }
  return c;
}

// partial-cell versions evaluated at an arbitrary x inside the grid
double M2_at(const RadialFunction& f, const Cumulants& c, double x) {
  const auto& r = f.grid->r;
  const int n = f.grid->n();
  if (x <= r[0]) return four_pi * f.v[0] * x * x * x / 3.0;
  if (x >= r[n - 1]) return c.M2[n - 1];
  const int j =
      static_cast<int>(std::upper_bound(r.begin(), r.end(), x) - r.begin()) -
      1;
  if (x == r[j]) return c.M2[j];
  const double a = r[j], b = r[j + 1];
  const double fa = f.v[j], fb = f.v[j + 1];
  const double fx = fa + (fb - fa) * (x - a) / (b - a);
  double wl, wr;
  hat_moments_r2(a, x, wl, wr);
  return c.M2[j] + four_pi * (wl * fa + wr * fx);
}

double M1_at(const RadialFunction& f, const Cumulants& c, double x) {
  const auto& r = f.grid->r;
  const int n = f.grid->n();
  if (x >= r[n - 1]) return 0.0;
  if (x <= r[0]) {
    double wl, wr;
    hat_moments_r1(x, r[0], wl, wr);
    return c.M1[0] + four_pi * (wl + wr) * f.v[0];  // constant extension
  }
  const int j =
      static_cast<int>(std::upper_bound(r.begin(), r.end(), x) - r.begin()) -
      1;
  if (x == r[j]) return c.M1[j];
  const double a = r[j], b = r[j + 1];
  const double fa = f.v[j], fb = f.v[j + 1];
  const double fx = fa + (fb - fa) * (x - a) / (b - a);
  double wl, wr;
  hat_moments_r1(x, b, wl, wr);
  return c.M1[j + 1] + four_pi * (wl * fx + wr * fb);
}

}  // namespace

double cumulative_charge(const RadialFunction& f, double r) {
  return M2_at(f, cumulants(f), r);
}

RadialFunction newton_potential(const RadialFunction& rho) {
  if (rho.kind == Kind::reduced_orbital)
    throw kind_error("newton_potential: expected a density (or signed density)");
  Cumulants c = cumulants(rho);
  RadialFunction phi(rho.grid, Kind::potential);
  for (int i = 0; i < rho.grid->n(); ++i)
    phi.v[i] = c.M2[i] / rho.grid->r[i] + c.M1[i];
  return phi;
}

double newton_potential_at(const RadialFunction& rho, double x) {
  if (!(x > 0.0)) throw param_error("newton_potential_at: x must be > 0");
  Cumulants c = cumulants(rho);
  return M2_at(rho, c, x) / x + M1_at(rho, c, x);
}

double coulomb_inner(const RadialFunction& f, const RadialFunction& g) {
  check_same_grid(f, g);
  const auto& r = f.grid->r;
  const auto& w = f.grid->w_vol;
  const int n = f.grid->n();
  // D = 1/2 sum_ij qf_i qg_j / max(r_i, r_j) via prefix sums
  std::vector<double> qg(n);
  for (int i = 0; i < n; ++i) qg[i] = w[i] * g.v[i];
  std::vector<double> inner(n), outer(n + 1, 0.0);
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    acc += qg[i];
    inner[i] = acc;
  }
  for (int i = n - 1; i >= 0; --i) outer[i] = outer[i + 1] + qg[i] / r[i];
  double d = 0.0;
  for (int i = 0; i < n; ++i)
    d += w[i] * f.v[i] * (inner[i] / r[i] + outer[i + 1]);
  return 0.5 * d;
}

double coulomb_norm(const RadialFunction& f) {
  return std::sqrt(std::max(0.0, coulomb_inner(f, f)));
}

double screened_potential(const RadialFunction& rho, double Z, double R,
                          double x) {
  if (!(x > 0.0)) throw param_error("screened_potential: x = 0 is singular");
  if (!(R > 0.0)) throw param_error("screened_potential: R must be > 0");
  Cumulants c = cumulants(rho);
  const double xin = std::min(x, R);
  double conv = M2_at(rho, c, xin) / x;
  if (R > x) conv += M1_at(rho, c, x) - M1_at(rho, c, R);
  return Z / x - conv;
}

double mean_field(const RadialFunction& rho, double Z, double x) {
  if (!(x > 0.0)) throw param_error("mean_field: x = 0 is singular");
  return Z / x - newton_potential_at(rho, x);
}

CounormSplit counorm_split_check(const RadialFunction& f, double x, double s,
                                 double k) {
  if (!(x > 0.0) || !(s > 0.0)) throw param_error("counorm_split: x, s > 0");
  if (!(k > 0.0 && k < 0.5)) throw param_error("counorm_split: k in (0, 1/2)");
  const auto& r = f.grid->r;
  const auto& w = f.grid->w_vol;
  const int n = f.grid->n();
  const double normC = coulomb_norm(f);

  // bipolar reduction: for radial f,
  //   int f(|y|) K(|x-y|) dy
  //     = (2 pi / x) int_0^inf rho f(rho) [ int_{|x-rho|}^{x+rho} u K(u) du ] drho
  // with the inner integral in closed form for K = 1/u - 1/s (support u < s)
  // and K = 1/u.  Outer quadrature on node-lumped drho weights
  // w_vol[i]/(4 pi r_i^2).
  double ball = 0.0;   // int_{|x-y|<s} [f]_+ (1/|x-y| - 1/s) dy
  double annul = 0.0;  // int_{A(x,k)} [f]_+ / |x-y| dy
  const double alo = (1.0 - 2.0 * k) * x;
  for (int i = 0; i < n; ++i) {
    const double rho = r[i];
    const double fp = std::max(f.v[i], 0.0);
    if (fp == 0.0) continue;
    const double wdr = w[i] / (4.0 * pi * rho * rho);
    const double lo = std::abs(x - rho);
    // int u (1/u - 1/s) du = u - u^2/(2s)
    const double hi1 = std::min(x + rho, s);
    if (hi1 > lo) {
      const double inner =
          (hi1 - hi1 * hi1 / (2.0 * s)) - (lo - lo * lo / (2.0 * s));
      ball += (2.0 * pi / x) * rho * fp * inner * wdr;
    }
    if (rho >= alo && rho <= x)
      annul += (2.0 * pi / x) * rho * fp * (2.0 * rho) * wdr;
  }

  const double lhs1 = newton_potential_at(f, x);
  const double rhs1 = ball + std::sqrt(2.0) / std::sqrt(s) * normC;

  Cumulants c = cumulants(f);
  const double lhs2 = M2_at(f, c, x) / x;  // int_{|y|<x} f/|x-y| dy (Newton)
  const double rhs2 =
      annul + std::pow(2.0, 1.5) / k / std::sqrt(x) * normC;
  return {lhs1, rhs1, lhs2, rhs2, lhs1 <= rhs1 + 1e-12 * std::abs(rhs1),
          lhs2 <= rhs2 + 1e-12 * std::abs(rhs2)};
}

void write_csv(const RadialFunction& f, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_csv: cannot open " + path);
  out << "r,value\n";
  char buf[64];
  for (int i = 0; i < f.grid->n(); ++i) {
    std::snprintf(buf, sizeof buf, "%.16e,%.16e\n", f.grid->r[i], f.v[i]);
    out << buf;
  }
}

RadialFunction read_csv(GridPtr grid, const std::string& path, Kind kind) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("read_csv: cannot open " + path);
  std::string line;
  std::getline(in, line);  // header
  RadialFunction f(std::move(grid), kind);
  int i = 0;
  while (std::getline(in, line) && i < f.grid->n()) {
    std::istringstream ss(line);
    double r, v;
    char comma;
    ss >> r >> comma >> v;
    f.v[i++] = v;
  }
  if (i != f.grid->n())
    throw std::runtime_error("read_csv: row count does not match grid");
  return f;
}

}  // namespace atomscope::radial

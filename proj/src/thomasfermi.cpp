#include "atomscope/thomasfermi.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <mutex>

#include "atomscope/common.hpp"

namespace atomscope::thomasfermi {

using constants::pi;

namespace {

// Baker series near t = 0: y = 1 - B t + (4/3) t^{3/2} - (2B/5) t^{5/2}
//                            + (1/3) t^3 + (3B^2/70) t^{7/2} + ...
double series_y(double t, double B) {
  const double st = std::sqrt(t);
  return 1.0 - B * t + (4.0 / 3.0) * t * st - 0.4 * B * t * t * st +
         t * t * t / 3.0 + (3.0 * B * B / 70.0) * t * t * t * st;
}

double series_dydt(double t, double B) {
  const double st = std::sqrt(t);
  return -B + 2.0 * st - B * t * st + t * t + 0.15 * B * B * t * t * st;
}

}  // namespace

double TFProfile::y_at(double tq) const {
  if (tq <= 0.0) return 1.0;
  if (tq >= t_max) return 144.0 / (tq * tq * tq);
  const double xq = std::sqrt(tq);
  const double dx = x[1] - x[0];
  const auto i = std::min<std::size_t>(static_cast<std::size_t>(xq / dx),
                                       x.size() - 2);
  const double f = (xq - x[i]) / dx;
  return y[i] * (1.0 - f) + y[i + 1] * f;
}

double TFProfile::outer_fraction(double tq) const {
  // int_{>t} y^{3/2} sqrt(s) ds = y(t) - t y'(t)
  if (tq <= 0.0) return 1.0;
  if (tq >= t_max) return 4.0 * 144.0 / (tq * tq * tq);
  const double xq = std::sqrt(tq);
  const double dx = x[1] - x[0];
  const auto i = std::clamp<std::size_t>(static_cast<std::size_t>(xq / dx), 1,
                                         x.size() - 2);
  // y'(t) = y'(x)/(2x) with centered differences on the x mesh
  const double dydx = (y[i + 1] - y[i - 1]) / (2.0 * dx);
  const double dydt = dydx / (2.0 * x[i]);
  const double yq = y_at(tq);
  return std::clamp(yq - tq * dydt, 0.0, 1.0);
}

double TFProfile::t_for_outer_fraction(double frac) const {
  if (!(frac > 0.0 && frac < 1.0))
    throw param_error("t_for_outer_fraction: frac must be in (0,1)");
  double lo = 1e-8, hi = t_max;
  if (frac < outer_fraction(hi))
    return std::cbrt(4.0 * 144.0 / frac);  // asymptotic tail
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (outer_fraction(mid) > frac)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

namespace {

// Production profile: Newton iteration on the 3-point FD discretization of
// y'' = y^{3/2}/sqrt(t) on the graded mesh t = x^2 (uniform x), Dirichlet
// ends y(0)=1, y(t_max) = 144/t_max^3.
TFProfile build_profile(double x_max, int n) {
  TFProfile p;
  p.x.resize(n);
  p.t.resize(n);
  p.y.resize(n);
  const double dx = x_max / (n - 1);
  for (int i = 0; i < n; ++i) {
    p.x[i] = i * dx;
    p.t[i] = p.x[i] * p.x[i];
  }
  p.t_max = p.t[n - 1];
  for (int i = 0; i < n; ++i)
    p.y[i] = 144.0 / std::pow(p.t[i] + std::cbrt(144.0), 3.0);
  p.y[0] = 1.0;
  p.y[n - 1] = 144.0 / (p.t_max * p.t_max * p.t_max);

  std::vector<double> F(n), dl(n), dd(n), du(n), cp(n), dp(n);
  for (int newton = 0; newton < 100; ++newton) {
    for (int i = 1; i + 1 < n; ++i) {
      const double h1 = p.t[i] - p.t[i - 1];
      const double h2 = p.t[i + 1] - p.t[i];
      const double a = 2.0 / (h1 * (h1 + h2));
      const double c = 2.0 / (h2 * (h1 + h2));
      const double yi = std::max(p.y[i], 0.0);
      const double st = std::sqrt(p.t[i]);
      F[i] = a * p.y[i - 1] - (a + c) * p.y[i] + c * p.y[i + 1] -
             yi * std::sqrt(yi) / st;
      dl[i] = a;
      dd[i] = -(a + c) - 1.5 * std::sqrt(yi) / st;
      du[i] = c;
    }
    F[0] = F[n - 1] = 0.0;
    dd[0] = dd[n - 1] = 1.0;
    dl[0] = dl[n - 1] = du[0] = du[n - 1] = 0.0;
    // Thomas solve J delta = -F
    cp[0] = du[0] / dd[0];
    dp[0] = -F[0] / dd[0];
    for (int i = 1; i < n; ++i) {
      const double m = dd[i] - dl[i] * cp[i - 1];
      cp[i] = (i + 1 < n) ? du[i] / m : 0.0;
      dp[i] = (-F[i] - dl[i] * dp[i - 1]) / m;
    }
    double step = std::abs(dp[n - 1]);
    p.y[n - 1] += dp[n - 1];
    double prev = dp[n - 1];
    for (int i = n - 2; i >= 0; --i) {
      prev = dp[i] - cp[i] * prev;
      p.y[i] += prev;
      step = std::max(step, std::abs(prev));
    }
    if (step < 1e-14) break;
  }
  // initial slope from the shooting oracle; the FD profile's truncation
  // error near the origin is too large for a series inversion there
  p.B = solve_tf_dimensionless(1e-12, 2.5e-4, 40.0).B;
  return p;
}

}  // namespace

const TFProfile& tf_profile() {
  static const TFProfile p = build_profile(100.0, 20001);
  return p;
}

ShootingResult solve_tf_dimensionless(double tol, double step_x,
                                      double t_cap) {
  if (!(tol > 0.0)) throw param_error("solve_tf_dimensionless: tol <= 0");
  // integrate well past t_cap: the slope bisection resolves B only as far
  // as the unstable mode has grown enough to trigger an event
  const double x_end = std::max(std::sqrt(t_cap), 20.0) + 2.0;
  // state (y, dy/dx); dy/dx' = (dy/dx)/x + 4 x y^{3/2}
  auto rhs = [](double x, double y, double w, double& fy, double& fw) {
    const double yp = y > 0.0 ? y * std::sqrt(y) : 0.0;
    fy = w;
    fw = w / x + 4.0 * x * yp;
  };
  // +1: crossed zero (slope too steep), -1: turned upward (too shallow)
  auto shoot = [&](double B, std::vector<double>* ts,
                   std::vector<double>* ys) -> int {
    // keep the first step small relative to x0: the w/x term makes the RK4
    // truncation error scale like (h/x)^4 near the origin
    const double t0 = 1e-6;
    double x = std::sqrt(t0);
    double y = series_y(t0, B);
    double w = series_dydt(t0, B) * 2.0 * x;
    int k = 0;
    while (x < x_end) {
      if (ts && (k++ % 8 == 0) && x * x <= t_cap) {
        ts->push_back(x * x);
        ys->push_back(y);
      }
      double f1y, f1w, f2y, f2w, f3y, f3w, f4y, f4w;
      rhs(x, y, w, f1y, f1w);
      rhs(x + 0.5 * step_x, y + 0.5 * step_x * f1y, w + 0.5 * step_x * f1w,
          f2y, f2w);
      rhs(x + 0.5 * step_x, y + 0.5 * step_x * f2y, w + 0.5 * step_x * f2w,
          f3y, f3w);
      rhs(x + step_x, y + step_x * f3y, w + step_x * f3w, f4y, f4w);
      y += step_x / 6.0 * (f1y + 2.0 * f2y + 2.0 * f3y + f4y);
      w += step_x / 6.0 * (f1w + 2.0 * f2w + 2.0 * f3w + f4w);
      x += step_x;
      if (y <= 0.0) return +1;
      if (w >= 0.0) return -1;
    }
    return 0;
  };
  double lo = 1.5, hi = 1.7;
  if (shoot(lo, nullptr, nullptr) != -1 || shoot(hi, nullptr, nullptr) != +1)
    throw solver_error("solve_tf_dimensionless: initial bracket invalid");
  int iters = 0;
  while (hi - lo > std::min(tol, 1e-12) && iters < 200) {
    const double mid = 0.5 * (lo + hi);
    (shoot(mid, nullptr, nullptr) >= 0 ? hi : lo) = mid;
    ++iters;
  }
  if (iters >= 200)
    throw solver_error("solve_tf_dimensionless: bisection cap reached");
  ShootingResult res;
  res.B = 0.5 * (lo + hi);
  shoot(res.B, &res.t, &res.y);
  return res;
}

double tf_gamma(int q) {
  if (q < 1) throw param_error("tf_gamma: q >= 1");
  return 0.5 * std::pow(6.0 * pi * pi / q, 2.0 / 3.0);
}

namespace {

double length_scale_b1(int q) {
  return tf_gamma(q) * std::pow(4.0 * pi, -2.0 / 3.0);
}

struct DimensionlessEnergy {
  double I53;   // int rho^{5/3} dV per Z^{7/3}
  double Iext;  // int (Z/r) rho dV per Z^{7/3}
  double D;     // Coulomb self-energy per Z^{7/3}
  double E;     // TF energy per Z^{7/3} (= -e0)
};

// Evaluate the TF functional of a neutral atom in the dimensionless frame:
// trapezoid on the graded x-mesh with the analytic x->0 endpoint limits
// (the integrands tend to nonzero constants there).
DimensionlessEnergy dimensionless_energy(int q) {
  const TFProfile& p = tf_profile();
  const double g = tf_gamma(q);
  const double b = length_scale_b1(q);  // Z = 1 frame
  const double cTF = 0.6 * g;           // (3/10)(6 pi^2/q)^{2/3}
  const int n = static_cast<int>(p.x.size());
  const double dx = p.x[1] - p.x[0];
  double I53 = 0.0, Iext = 0.0, D = 0.0;
  for (int i = 0; i < n; ++i) {
    const double wq = (i == 0 || i == n - 1) ? 0.5 * dx : dx;
    double f53, fext, fD;
    if (i == 0) {
      f53 = 8.0 * pi * std::sqrt(b) * std::pow(1.0 / g, 2.5);
      fext = 8.0 * pi * std::sqrt(b) * std::pow(1.0 / g, 1.5);
      fD = 0.0;
    } else {
      const double r = b * p.t[i];
      const double jac = 2.0 * b * p.x[i];
      const double phi = p.y[i] / r;
      const double rho = std::pow(std::max(phi, 0.0) / g, 1.5);
      const double vol = 4.0 * pi * r * r;
      f53 = vol * std::pow(rho, 5.0 / 3.0) * jac;
      fext = vol * rho / r * jac;
      fD = 0.5 * vol * rho * (1.0 / r - phi) * jac;
    }
    I53 += wq * f53;
    Iext += wq * fext;
    D += wq * fD;
  }
  return {I53, Iext, D, cTF * I53 - Iext + D};
}

const DimensionlessEnergy& dim_energy_cached(int q) {
  static std::map<int, DimensionlessEnergy> cache;
  static std::mutex m;
  std::lock_guard<std::mutex> lk(m);
  auto it = cache.find(q);
  if (it == cache.end()) it = cache.emplace(q, dimensionless_energy(q)).first;
  return it->second;
}

}  // namespace

double tf_e0(int q) { return -dim_energy_cached(q).E; }

double tf_e0_slope_route(int q) {
  return (3.0 / 7.0) * tf_profile().B / length_scale_b1(q);
}

double tf_I53(int q) { return dim_energy_cached(q).I53; }

double grid_functional_energy(const TFSolution& sol) {
  const double g = tf_gamma(sol.params.q);
  const double cTF = 0.6 * g;
  double i53 = 0.0, iext = 0.0;
  for (int i = 0; i < sol.grid->n(); ++i) {
    i53 += sol.grid->w_vol[i] * std::pow(sol.rho.v[i], 5.0 / 3.0);
    iext += sol.grid->w_vol[i] * sol.params.Z * sol.rho.v[i] / sol.grid->r[i];
  }
  return cTF * i53 - iext + radial::coulomb_inner(sol.rho, sol.rho);
}

namespace {

// Ionic dimensionless profile: y(0) = 1, y(X) = 0 with
// N/Z = 1 + X y'(X); bisection on the initial slope.
struct IonProfile {
  double X = 0.0;      // boundary in t
  double slopeX = 0.0;  // y'(X)
  std::shared_ptr<TFProfile> prof;
};

IonProfile solve_ion(double frac /* = N/Z in (0,1) */) {
  auto run = [&](double B, std::vector<double>* xs, std::vector<double>* ys,
                 double* Xout, double* slopeOut) -> double {
    const double hx = 5e-4;
    const double t0 = 1e-6;
    double x = std::sqrt(t0);
    double y = series_y(t0, B);
    double w = series_dydt(t0, B) * 2.0 * x;
    auto rhs = [](double x_, double y_, double w_, double& fy, double& fw) {
      const double yp = y_ > 0.0 ? y_ * std::sqrt(y_) : 0.0;
      fy = w_;
      fw = w_ / x_ + 4.0 * x_ * yp;
    };
    while (x < 400.0) {
      if (xs) {
        xs->push_back(x);
        ys->push_back(y);
      }
      double f1y, f1w, f2y, f2w, f3y, f3w, f4y, f4w;
      rhs(x, y, w, f1y, f1w);
      rhs(x + 0.5 * hx, y + 0.5 * hx * f1y, w + 0.5 * hx * f1w, f2y, f2w);
      rhs(x + 0.5 * hx, y + 0.5 * hx * f2y, w + 0.5 * hx * f2w, f3y, f3w);
      rhs(x + hx, y + hx * f3y, w + hx * f3w, f4y, f4w);
      const double yn = y + hx / 6.0 * (f1y + 2 * f2y + 2 * f3y + f4y);
      const double wn = w + hx / 6.0 * (f1w + 2 * f2w + 2 * f3w + f4w);
      if (yn <= 0.0) {
        // linear crossing inside the step
        const double frac_step = y / (y - yn);
        const double xc = x + frac_step * hx;
        const double wc = w + frac_step * (wn - w);
        const double X = xc * xc;
        const double slope = wc / (2.0 * xc);  // dy/dt at the boundary
        if (Xout) {
          *Xout = X;
          *slopeOut = slope;
        }
        return 1.0 + X * slope;  // charge fraction carried by the ion
      }
      y = yn;
      w = wn;
      x += hx;
      if (w >= 0.0) break;
    }
    return 1.0;  // never crossed: behaves like the neutral solution
  };
  double lo = tf_profile().B + 1e-9, hi = 60.0;
  for (int it = 0; it < 100; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double f = run(mid, nullptr, nullptr, nullptr, nullptr);
    if (f > frac)
      lo = mid;  // too much charge kept: steepen
    else
      hi = mid;
  }
  IonProfile ip;
  ip.prof = std::make_shared<TFProfile>();
  std::vector<double> xs, ys;
  const double B = 0.5 * (lo + hi);
  run(B, &xs, &ys, &ip.X, &ip.slopeX);
  ip.prof->B = B;
  ip.prof->x = std::move(xs);
  ip.prof->y = std::move(ys);
  ip.prof->t.resize(ip.prof->x.size());
  for (std::size_t i = 0; i < ip.prof->x.size(); ++i)
    ip.prof->t[i] = ip.prof->x[i] * ip.prof->x[i];
  ip.prof->t_max = ip.X;
  return ip;
}

double max_residual(const TFSolution& s) {
  const double g = tf_gamma(s.params.q);
  double scale = 0.0, res = 0.0;
  for (int i = 0; i < s.grid->n(); ++i) scale = std::max(scale, s.phi.v[i]);
  for (int i = 0; i < s.grid->n(); ++i) {
    const double lhs = g * std::pow(s.rho.v[i], 2.0 / 3.0);
    const double rhs = std::max(s.phi.v[i] - s.mu, 0.0);
    res = std::max(res, std::abs(lhs - rhs));
  }
  return res / std::max(scale, 1e-300);
}

}  // namespace

TFSolution solve_tf_atom(double Z, double N, int q, radial::GridPtr grid) {
  if (!(Z > 0.0)) throw param_error("solve_tf_atom: Z must be > 0");
  if (N < 0.0) throw param_error("solve_tf_atom: N must be >= 0");
  if (q < 1) throw param_error("solve_tf_atom: q must be >= 1");
  const double g = tf_gamma(q);
  const double b = length_scale_b1(q) * std::pow(Z, -1.0 / 3.0);
  TFSolution sol;
  sol.params = {Z, N, q, 0.0};
  sol.grid = grid;
  sol.rho = radial::RadialFunction(grid, radial::Kind::density);
  sol.phi = radial::RadialFunction(grid, radial::Kind::potential);
  sol.b = b;

  if (N >= Z) {
    // neutral problem (the TF atom binds at most Z electrons)
    const TFProfile& p = tf_profile();
    sol.mu = 0.0;
    for (int i = 0; i < grid->n(); ++i) {
      const double r = grid->r[i];
      const double phi = Z * p.y_at(r / b) / r;
      sol.phi.v[i] = phi;
      sol.rho.v[i] = std::pow(std::max(phi, 0.0) / g, 1.5);
    }
    sol.energy = -tf_e0(q) * std::pow(Z, 7.0 / 3.0);
  } else {
    IonProfile ip = solve_ion(N / Z);
    sol.ion_X = ip.X;
    sol.ion_slope = ip.slopeX;
    sol.ion_profile = ip.prof;
    const double R_ion = b * ip.X;
    sol.mu = -Z * ip.slopeX / b;
    if (grid->r_max < R_ion)
      throw param_error("solve_tf_atom: grid does not cover the ion radius " +
                        std::to_string(R_ion));
    for (int i = 0; i < grid->n(); ++i) {
      const double r = grid->r[i];
      if (r < R_ion) {
        const double psi = Z * ip.prof->y_at(r / b) / r;  // phi - mu
        sol.phi.v[i] = psi + sol.mu;
        sol.rho.v[i] = std::pow(std::max(psi, 0.0) / g, 1.5);
      } else {
        sol.phi.v[i] = (Z - N) / r;
        sol.rho.v[i] = 0.0;
      }
    }
    // energy on the ionic dimensionless mesh (trapezoid in x, endpoint limits)
    const auto& xs = ip.prof->x;
    const auto& ys = ip.prof->y;
    const double cTF = 0.6 * g;
    double I53 = 0.0, Iext = 0.0, D = 0.0;
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
      auto piece = [&](std::size_t j, int which) {
        if (xs[j] == 0.0) {
          return which == 0
                     ? 8.0 * pi * std::sqrt(b) * std::pow(Z / g, 2.5)
                     : (which == 1
                            ? 8.0 * pi * std::sqrt(b) * std::pow(Z / g, 1.5)
                            : 0.0);
        }
        const double r = b * xs[j] * xs[j];
        const double jac = 2.0 * b * xs[j];
        const double psi = Z * std::max(ys[j], 0.0) / r;
        const double rho = std::pow(psi / g, 1.5);
        const double vol = 4.0 * pi * r * r;
        if (which == 0) return vol * std::pow(rho, 5.0 / 3.0) * jac;
        if (which == 1) return vol * rho / r * jac;
        return 0.5 * vol * rho * (Z / r - psi - sol.mu) * jac;
      };
      const double dxs = xs[i + 1] - xs[i];
      I53 += 0.5 * dxs * (piece(i, 0) + piece(i + 1, 0));
      Iext += 0.5 * dxs * (piece(i, 1) + piece(i + 1, 1));
      D += 0.5 * dxs * (piece(i, 2) + piece(i + 1, 2));
    }
    sol.energy = cTF * I53 - Iext + D;
    // charge by direct quadrature of the ionic profile (independent check
    // of the slope identity N = Z (1 + X y'(X)) targeted by the shooting)
    double qdim = 0.0;
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
      auto piece = [&](std::size_t j) {
        // rho dV per dx: y^{3/2} sqrt(t) dt/dx = 2 x^2 y^{3/2}
        return 2.0 * xs[j] * xs[j] *
               std::pow(std::max(ys[j], 0.0), 1.5);
      };
      qdim += 0.5 * (xs[i + 1] - xs[i]) * (piece(i) + piece(i + 1));
    }
    sol.total_charge = Z * qdim;
    sol.residual = max_residual(sol);
    return sol;
  }
  sol.total_charge = radial::integrate_volume(sol.rho);
  sol.residual = max_residual(sol);
  return sol;
}

OTFSolution solve_otf(const OTFInput& in, radial::GridPtr grid,
                      const OTFOptions& opt) {
  if (!(in.cut > 0.0)) throw param_error("solve_otf: cut radius must be > 0");
  if (in.N_out < 0.0) throw param_error("solve_otf: N_out must be >= 0");
  if (in.r.size() != in.v.size() || in.r.empty())
    throw param_error("solve_otf: bad V_r samples");
  const double g = tf_gamma(in.q);
  const int n = grid->n();

  // V_r on the grid: zero inside the cut, linear interpolation of the
  // samples, harmonic (C/x) extrapolation beyond the last sample
  std::vector<double> V(n, 0.0);
  const double tail_c = in.v.back() * in.r.back();
  for (int i = 0; i < n; ++i) {
    const double x = grid->r[i];
    if (x < in.cut) continue;
    if (x >= in.r.back()) {
      V[i] = tail_c / x;
    } else {
      auto it = std::upper_bound(in.r.begin(), in.r.end(), x);
      const std::size_t j = std::max<std::ptrdiff_t>(it - in.r.begin() - 1, 0);
      const double f = (x - in.r[j]) / (in.r[j + 1] - in.r[j]);
      V[i] = in.v[j] * (1.0 - f) + in.v[j + 1] * f;
    }
  }

  OTFSolution sol;
  sol.input = in;
  sol.grid = grid;
  sol.rho = radial::RadialFunction(grid, radial::Kind::density);
  sol.phi = radial::RadialFunction(grid, radial::Kind::potential);

  // The plain damped fixed point phi <- (1-d) phi + d (V - rho(phi)*1/|x|)
  // is not a contraction at production resolutions (the density response
  // near the cut is too stiff), so the OTF equation is solved in radial
  // Poisson form instead:  with  v = r (phi - V),
  //   v'' = 4 pi r ((V + v/r - mu)_+ / gamma)^{3/2},  v(0) = 0, v'(rmax) = 0,
  // by damped Newton iteration on the tridiagonal FD system; the chemical
  // potential is re-bisected on the charge constraint each outer pass.
  const auto& r = grid->r;
  auto newton_solve = [&](double mu, std::vector<double>& v) -> bool {
    std::vector<double> F(n), dl(n), dd(n), du(n), cp(n), dp(n);
    for (int newton = 0; newton < opt.max_sweeps; ++newton) {
      for (int i = 0; i < n; ++i) {
        const double rm = i == 0 ? 0.0 : r[i - 1];
        const double vm = i == 0 ? 0.0 : v[i - 1];
        if (i == n - 1) {  // v'(rmax) = 0
          F[i] = v[i] - v[i - 1];
          dl[i] = -1.0;
          dd[i] = 1.0;
          du[i] = 0.0;
          continue;
        }
        const double h1 = r[i] - rm;
        const double h2 = r[i + 1] - r[i];
        const double a = 2.0 / (h1 * (h1 + h2));
        const double c = 2.0 / (h2 * (h1 + h2));
        const double chi = V[i] + v[i] / r[i];
        const double pos = std::max(chi - mu, 0.0);
        F[i] = a * vm - (a + c) * v[i] + c * v[i + 1] -
               4.0 * pi * r[i] * std::pow(pos / g, 1.5);
        const double drho =
            pos > 0.0 ? 6.0 * pi * std::sqrt(pos) / (g * std::sqrt(g)) : 0.0;
        dl[i] = a;
        dd[i] = -(a + c) - drho;
        du[i] = c;
      }
      cp[0] = du[0] / dd[0];
      dp[0] = -F[0] / dd[0];
      for (int i = 1; i < n; ++i) {
        const double m = dd[i] - dl[i] * cp[i - 1];
        cp[i] = (i + 1 < n) ? du[i] / m : 0.0;
        dp[i] = (-F[i] - dl[i] * dp[i - 1]) / m;
      }
      double step = std::abs(dp[n - 1]);
      std::vector<double> delta(n);
      delta[n - 1] = dp[n - 1];
      for (int i = n - 2; i >= 0; --i) {
        delta[i] = dp[i] - cp[i] * delta[i + 1];
        step = std::max(step, std::abs(delta[i]));
      }
      // cap the update so chi cannot overshoot into deep negative values
      const double vscale =
          std::max(1.0, *std::max_element(V.begin(), V.end()));
      double lam = 1.0;
      if (step > 0.5 * vscale) lam = 0.5 * vscale / step;
      for (int i = 0; i < n; ++i) v[i] += lam * delta[i];
      sol.sweeps = newton + 1;
      if (step < 1e-12 * vscale) return true;
    }
    return false;
  };

  auto charge_of = [&](const std::vector<double>& v, double mu) {
    double q = 0.0;
    for (int i = 0; i < n; ++i) {
      const double pos = std::max(V[i] + v[i] / r[i] - mu, 0.0);
      q += grid->w_vol[i] * std::pow(pos / g, 1.5);
    }
    return q;
  };

  std::vector<double> v(n, 0.0);
  if (!newton_solve(0.0, v))
    throw solver_error("solve_otf: Newton iteration failed at mu = 0");
  double mu = 0.0;
  if (charge_of(v, 0.0) > in.N_out) {
    double lo = 0.0, hi = *std::max_element(V.begin(), V.end());
    std::vector<double> vtry = v;
    for (int it = 0; it < 100; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (!newton_solve(mid, vtry))
        throw solver_error("solve_otf: Newton iteration failed in mu scan");
      (charge_of(vtry, mid) > in.N_out ? lo : hi) = mid;
    }
    mu = 0.5 * (lo + hi);
    newton_solve(mu, v);
  }
  sol.mu = mu;
  double scale = 1e-300, res = 0.0;
  for (int i = 0; i < n; ++i) {
    sol.phi.v[i] = V[i] + v[i] / r[i];
    sol.rho.v[i] = std::pow(std::max(sol.phi.v[i] - mu, 0.0) / g, 1.5);
    scale = std::max(scale, std::abs(sol.phi.v[i]));
  }
  // residual of the stored pair against the OTF equation
  for (int i = 0; i < n; ++i) {
    const double lhs = g * std::pow(sol.rho.v[i], 2.0 / 3.0);
    const double rhs = std::max(sol.phi.v[i] - mu, 0.0);
    res = std::max(res, std::abs(lhs - rhs));
  }
  sol.residual = res / scale;
  return sol;
}

SommerfeldEnvelope::SommerfeldEnvelope(double Z_, int q_) : q(q_), Z(Z_) {
  if (q_ < 1 || !(Z_ > 0.0)) throw param_error("SommerfeldEnvelope: bad params");
  zeta = constants::sommerfeld_zeta;
  beta0 = 0.5 * std::pow(pi, 2.0 / 3.0) * std::pow(3.0, -5.0 / 3.0) *
          std::pow(2.0, -1.0 / 3.0) * std::pow(static_cast<double>(q_),
                                               -2.0 / 3.0);
  a = std::pow(beta0, zeta) *
      (9.0 * pi / (q_ * std::pow(beta0, 1.5)) - 1.0);
}

Envelope sommerfeld_bounds(double x, const SommerfeldEnvelope& env) {
  if (!(x > 0.0)) throw param_error("sommerfeld_bounds: x must be > 0");
  const double S = 81.0 * pi * pi / (2.0 * env.q * env.q);
  const double upper = std::min(S / (x * x * x * x), env.Z / x);
  const double branch = env.beta0 * std::pow(env.Z, -1.0 / 3.0);
  double lower;
  if (x <= branch) {
    lower = env.Z / x - std::pow(env.Z, 4.0 / 3.0) / (2.0 * env.beta0);
  } else {
    const double corr =
        1.0 + env.a * std::pow(env.Z, -env.zeta / 3.0) * std::pow(x, -env.zeta);
    lower = S / (x * x * x * x) / (corr * corr);
  }
  return {lower, upper};
}

double tf_radius(const TFSolution& sol, double nu) {
  const double total = sol.params.N >= sol.params.Z ? sol.params.Z
                                                    : sol.params.N;
  if (!(nu > 0.0 && nu < total))
    throw param_error("tf_radius: nu must be in (0, total_charge)");
  if (sol.ion_X < 0.0) {
    const double t = tf_profile().t_for_outer_fraction(nu / sol.params.Z);
    return sol.b * t;
  }
  // ion: outer charge(t) = N - Z * inner(t), inner from the ionic profile
  const auto& p = *sol.ion_profile;
  double lo = 1e-8, hi = sol.ion_X;
  auto outer = [&](double t) {
    // inner fraction = 1 + t y'(t) - y(t); centered difference on mesh
    const double dxm = p.x[1] - p.x[0];
    const double xq = std::sqrt(t);
    const auto i = std::clamp<std::size_t>(static_cast<std::size_t>(xq / dxm),
                                           1, p.x.size() - 2);
    const double dydt = (p.y[i + 1] - p.y[i - 1]) / (2.0 * dxm) /
                        (2.0 * p.x[i]);
    const double inner = 1.0 + t * dydt - p.y_at(t);
    return sol.params.N - sol.params.Z * inner;
  };
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (outer(mid) > nu ? lo : hi) = mid;
  }
  return sol.b * 0.5 * (lo + hi);
}

BoundCheck rho_53_bound_check(const TFSolution& sol) {
  const double Z = sol.params.Z;
  const int q = sol.params.q;
  const double lhs = tf_I53(q) * std::pow(Z, 7.0 / 3.0);
  const double rhs = 4.0 * std::pow(2.0, 2.0 / 3.0) / (pi * pi) * (5.0 / 7.0) *
                     std::pow(static_cast<double>(q), 4.0 / 3.0) *
                     std::pow(Z, 7.0 / 3.0);
  return {lhs, rhs, lhs <= rhs, rhs / lhs};
}

void export_solution(const TFSolution& sol, const std::string& csv_path,
                     const std::string& json_path) {
  std::ofstream csv(csv_path);
  if (!csv) throw std::runtime_error("export_solution: cannot open " + csv_path);
  csv << "r,rho,phi\n";
  char buf[96];
  for (int i = 0; i < sol.grid->n(); ++i) {
    std::snprintf(buf, sizeof buf, "%.16e,%.16e,%.16e\n", sol.grid->r[i],
                  sol.rho.v[i], sol.phi.v[i]);
    csv << buf;
  }
  std::ofstream js(json_path);
  if (!js) throw std::runtime_error("export_solution: cannot open " + json_path);
  char jbuf[512];
  std::snprintf(jbuf, sizeof jbuf,
                "{\"Z\": %.17g, \"N\": %.17g, \"q\": %d, \"mu\": %.17g, "
                "\"energy\": %.17g, \"total_charge\": %.17g, \"residual\": "
                "%.17g}\n",
                sol.params.Z, sol.params.N, sol.params.q, sol.mu, sol.energy,
                sol.total_charge, sol.residual);
  js << jbuf;
}

}  // namespace atomscope::thomasfermi

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "atomscope/common.hpp"
#include "atomscope/semiclassics.hpp"
#include "doctest.h"

using namespace atomscope;
using constants::pi;
namespace tf = atomscope::thomasfermi;
namespace sc = atomscope::semiclassics;

namespace {
tf::TFSolution neutral_tf(double Z, int q) {
  auto grid = radial::make_grid(60.0, 2000, radial::GridScheme::log_uniform);
  return tf::solve_tf_atom(Z, Z, q, grid);
}
}  // namespace

TEST_CASE("weyl term: positive part, homogeneity, TF identity") {
  auto sol = neutral_tf(20.0, 2);
  // negative potential contributes nothing
  radial::RadialFunction neg(sol.grid, radial::Kind::potential);
  for (auto& v : neg.v) v = -1.0;
  CHECK(sc::weyl_term(neg, 2) == 0.0);
  // homogeneity: phi -> lambda phi scales by lambda^{5/2}
  radial::RadialFunction scaled = sol.phi;
  for (auto& v : scaled.v) v *= 3.0;
  CHECK(sc::weyl_term(scaled, 2) ==
        doctest::Approx(std::pow(3.0, 2.5) * sc::weyl_term(sol.phi, 2))
            .epsilon(1e-13));
  // Weyl identity: weyl(phi^TF) = -(2/5) int phi rho (same quadrature)
  double rhs = 0.0;
  for (int i = 0; i < sol.grid->n(); ++i)
    rhs += sol.grid->w_vol[i] * sol.phi.v[i] * sol.rho.v[i];
  rhs *= -0.4;
  CHECK(sc::weyl_term(sol.phi, 2) == doctest::Approx(rhs).epsilon(1e-12));
}

TEST_CASE("relativistic corrections: ordering and kappa^2 scale") {
  auto sol = neutral_tf(20.0, 2);
  const double kappa = 0.5;
  const double alpha = kappa / 20.0;
  sc::RadialWindow w{std::pow(20.0, -0.6), 1e300};
  const auto b = sc::phase_space_budget(sol.phi, 2, alpha, w);
  CHECK(b.weyl < 0.0);
  CHECK(b.corr72 > 0.0);
  CHECK(b.corr92 > 0.0);
  CHECK(b.corr92 < b.corr72);
  CHECK(b.corr72 < std::abs(b.weyl));
  CHECK(b.corr72 / std::abs(b.weyl) < 0.05);
  // alpha = 0 shuts the corrections off
  const auto z = sc::relativistic_corrections(sol.phi, 2, 0.0, w);
  CHECK(z.corr72 == 0.0);
  CHECK(z.corr92 == 0.0);
  // a window reaching the origin is rejected for Coulombic tails
  CHECK_THROWS_AS(sc::relativistic_corrections(sol.phi, 2, alpha, {0.0, 1.0}),
                  param_error);
}

TEST_CASE("dly bound: zero potential, coulomb cap shape, sign") {
  auto grid = radial::make_grid(30.0, 800, radial::GridScheme::log_uniform);
  radial::RadialFunction zero(grid, radial::Kind::potential);
  CHECK(sc::dly_bound(zero, 0.1, 0.0, 1.0, 0.326) == 0.0);

  // U = kappa/|x| inside R, 0 outside: only the explicit terms survive
  const double kappa = 0.4, alpha = 0.01, R = 1.0, C = 0.326;
  radial::RadialFunction u(grid, radial::Kind::potential);
  for (int i = 0; i < grid->n(); ++i)
    u.v[i] = grid->r[i] < R ? kappa / grid->r[i] : 0.0;
  const double got = sc::dly_bound(u, alpha, kappa, R, C);
  const double expect = -C * std::pow(kappa, 2.5) * std::pow(alpha, -1.5) *
                            std::sqrt(R) -
                        C * std::pow(kappa, 4.0) / alpha;
  CHECK(got == doctest::Approx(expect).epsilon(1e-12));
  CHECK(got <= 0.0);

  // with kappa = Z alpha this is the C1 kappa Z^{3/2} R^{1/2} + C2 kappa^3 Z
  // structure: dividing by that shape gives an O(1) constant in Z
  const double Z = kappa / alpha;
  const double shape = kappa * std::pow(Z, 1.5) * std::sqrt(R) +
                       std::pow(kappa, 3.0) * Z;
  CHECK(std::abs(got) / shape < 10.0 * C);

  // monotone (increasing) in R for a fixed admissible U: the explicit
  // penalty grows slower than the outer integral mass it absorbs
  radial::RadialFunction ufix(grid, radial::Kind::potential);
  for (int i = 0; i < grid->n(); ++i)
    ufix.v[i] = grid->r[i] < 2.0 ? kappa / grid->r[i] : 0.0;
  double prev = -1e300;
  for (double Rv : {0.25, 0.5, 1.0, 2.0, 4.0}) {
    const double b = sc::dly_bound(ufix, alpha, kappa, Rv, C);
    CHECK(b >= prev);
    prev = b;
  }
  // precondition violation rejected
  radial::RadialFunction bad(grid, radial::Kind::potential);
  for (int i = 0; i < grid->n(); ++i) bad.v[i] = 10.0 * kappa / grid->r[i];
  CHECK_THROWS_AS(sc::dly_bound(bad, alpha, kappa, R, C), param_error);
}

TEST_CASE("coherent completeness on gaussians") {
  const auto r11 = sc::coherent_completeness_check(1.0, 1.0);
  CHECK(r11.rel_err < 1e-10);
  const auto r12 = sc::coherent_completeness_check(1.0, 2.0);
  CHECK(r12.rel_err < 1e-10);
  const auto r21 = sc::coherent_completeness_check(2.0, 0.7);
  CHECK(r21.rel_err < 1e-10);
  CHECK_THROWS_AS(sc::coherent_completeness_check(-1.0, 1.0), param_error);
}

TEST_CASE("coherent potential-weighted variant matches direct quadrature") {
  const auto r = sc::coherent_potential_check(1.0, 0.8, 1.3, 0.9);
  CHECK(r.rel_err < 1e-10);
}

TEST_CASE("tf vs hf energy gap row") {
  auto grid = radial::make_grid(25.0, 1200, radial::GridScheme::uniform);
  hartreefock::HFConfig cfg;
  cfg.lmax = 0;
  auto hsol = hartreefock::scf_solve(2.0, 2.0, 1e-3, 2, grid, cfg);
  auto tsol = tf::solve_tf_atom(2.0, 2.0, 2, grid);
  const auto row = sc::tf_vs_hf_energy_gap(tsol, hsol);
  CHECK(row.e_hf < 0.0);
  CHECK(row.e_tf < 0.0);
  CHECK(row.e_tf ==
        doctest::Approx(-tf::tf_e0(2) * std::pow(2.0, 7.0 / 3.0))
            .epsilon(1e-12));
  CHECK(row.gap == doctest::Approx(row.e_hf - row.e_tf));
}

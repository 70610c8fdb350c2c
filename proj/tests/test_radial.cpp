#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstdio>
#include <random>

#include "atomscope/common.hpp"
#include "atomscope/radial.hpp"
#include "doctest.h"

using namespace atomscope;
using constants::pi;
using radial::GridScheme;
using radial::Kind;
using radial::RadialFunction;

namespace {

RadialFunction uniform_ball(radial::GridPtr g, double Q, double R) {
  RadialFunction rho(g, Kind::density);
  const double val = Q / (4.0 / 3.0 * pi * R * R * R);
  for (int i = 0; i < g->n(); ++i) rho.v[i] = g->r[i] <= R ? val : 0.0;
  return rho;
}

RadialFunction gaussian_density(radial::GridPtr g, double sigma) {
  RadialFunction rho(g, Kind::density);
  const double norm = std::pow(2.0 * pi * sigma * sigma, -1.5);
  for (int i = 0; i < g->n(); ++i)
    rho.v[i] = norm * std::exp(-g->r[i] * g->r[i] / (2.0 * sigma * sigma));
  return rho;
}

}  // namespace

TEST_CASE("uniform grid nodes and volume exactness") {
  auto g = radial::make_grid(10.0, 100, GridScheme::uniform);
  for (int i = 0; i < 100; ++i)
    CHECK(g->r[i] == doctest::Approx(0.1 * (i + 1)).epsilon(1e-15));
  RadialFunction one(g, Kind::density);
  for (auto& v : one.v) v = 1.0;
  CHECK(radial::integrate_volume(one) ==
        doctest::Approx(4.0 / 3.0 * pi * 1000.0).epsilon(1e-12));
  for (double w : g->w_vol) CHECK(w > 0.0);
}

TEST_CASE("log grid volume exactness and first point") {
  auto g = radial::make_grid(10.0, 200, GridScheme::log_uniform);
  CHECK(g->r[0] == doctest::Approx(10.0 * 1e-6).epsilon(1e-12));
  RadialFunction one(g, Kind::density);
  for (auto& v : one.v) v = 1.0;
  CHECK(radial::integrate_volume(one) ==
        doctest::Approx(4.0 / 3.0 * pi * 1000.0).epsilon(1e-12));
}

TEST_CASE("grid parameter validation") {
  CHECK_THROWS_AS(radial::make_grid(10.0, 15, GridScheme::uniform),
                  param_error);
  CHECK_THROWS_AS(radial::make_grid(-1.0, 100, GridScheme::uniform),
                  param_error);
}

TEST_CASE("newton potential of a uniform ball") {
  auto g = radial::make_grid(8.0, 4000, GridScheme::uniform);
  auto rho = uniform_ball(g, 3.0, 2.0);
  auto phi = radial::newton_potential(rho);
  // exterior: Q/r, exact for the interpolant's own charge
  const double Q = radial::integrate_volume(rho);
  CHECK(Q == doctest::Approx(3.0).epsilon(2e-3));
  for (double x : {2.5, 4.0, 7.0})
    CHECK(radial::newton_potential_at(rho, x) ==
          doctest::Approx(Q / x).epsilon(1e-12));
  // the ball edge is smeared over one cell, so interior values carry O(h)
  CHECK(radial::newton_potential_at(rho, 1e-4) ==
        doctest::Approx(1.5 * 3.0 / 2.0).epsilon(5e-3));
  // monotone decreasing
  for (int i = 1; i < g->n(); ++i) CHECK(phi.v[i] <= phi.v[i - 1] + 1e-14);
  CHECK_THROWS_AS(radial::newton_potential(
                      RadialFunction(g, Kind::reduced_orbital)),
                  kind_error);
}

TEST_CASE("newton potential of a Gaussian matches erf closed form") {
  auto g = radial::make_grid(14.0, 30000, GridScheme::uniform);
  auto rho = gaussian_density(g, 1.0);
  const double x = 1.0;
  const double exact = std::erf(x / std::sqrt(2.0)) / x;
  CHECK(radial::newton_potential_at(rho, x) ==
        doctest::Approx(exact).epsilon(1e-8));
}

TEST_CASE("coulomb inner product: ball self-energy, symmetry, PSD") {
  auto g = radial::make_grid(6.0, 2500, GridScheme::uniform);
  auto rho = uniform_ball(g, 2.0, 1.5);
  // D(rho,rho) = (1/2) * (6/5) Q^2 / R  with the 1/2 convention
  CHECK(radial::coulomb_inner(rho, rho) ==
        doctest::Approx(0.5 * 1.2 * 4.0 / 1.5).epsilon(1e-2));

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  RadialFunction f(g, Kind::density), h(g, Kind::density);
  for (int i = 0; i < g->n(); ++i) {
    f.v[i] = dist(rng);
    h.v[i] = dist(rng);
  }
  const double dfh = radial::coulomb_inner(f, h);
  const double dhf = radial::coulomb_inner(h, f);
  CHECK(std::abs(dfh - dhf) <= 1e-12 * std::max(1.0, std::abs(dfh)));
  CHECK(radial::coulomb_inner(f, f) >= 0.0);
  CHECK(radial::coulomb_inner(h, h) >= 0.0);
}

TEST_CASE("gaussian coulomb self-energy closed form") {
  auto g = radial::make_grid(14.0, 8000, GridScheme::uniform);
  auto rho = gaussian_density(g, 1.0);
  // D = 1/(2 sqrt(pi) sigma), frozen from the closed-form oracle
  CHECK(radial::coulomb_inner(rho, rho) ==
        doctest::Approx(0.28209479177387814).epsilon(1e-5));
}

TEST_CASE("coulomb norm triangle inequality on random triples") {
  auto g = radial::make_grid(5.0, 300, GridScheme::uniform);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int rep = 0; rep < 20; ++rep) {
    RadialFunction f(g, Kind::density), h(g, Kind::density),
        sum(g, Kind::density);
    for (int i = 0; i < g->n(); ++i) {
      f.v[i] = dist(rng);
      h.v[i] = dist(rng);
      sum.v[i] = f.v[i] + h.v[i];
    }
    CHECK(radial::coulomb_norm(sum) <=
          radial::coulomb_norm(f) + radial::coulomb_norm(h) + 1e-12);
  }
}

TEST_CASE("bilinearity of the coulomb inner product") {
  auto g = radial::make_grid(5.0, 400, GridScheme::uniform);
  auto a = uniform_ball(g, 1.0, 2.0);
  auto b = gaussian_density(g, 0.7);
  RadialFunction c(g, Kind::density);
  for (int i = 0; i < g->n(); ++i) c.v[i] = 2.0 * a.v[i] - 3.0 * b.v[i];
  const double lhs = radial::coulomb_inner(c, b);
  const double rhs = 2.0 * radial::coulomb_inner(a, b) -
                     3.0 * radial::coulomb_inner(b, b);
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
}

TEST_CASE("screened potential") {
  auto g = radial::make_grid(8.0, 3000, GridScheme::uniform);
  RadialFunction zero(g, Kind::density);
  CHECK(radial::screened_potential(zero, 5.0, 1.0, 2.0) ==
        doctest::Approx(2.5).epsilon(1e-14));
  // charge Q inside R, x >= R: (Z - Q)/x
  auto rho = uniform_ball(g, 2.0, 1.0);
  CHECK(radial::screened_potential(rho, 5.0, 1.5, 3.0) ==
        doctest::Approx(1.0).epsilon(1e-2));
  CHECK_THROWS_AS(radial::screened_potential(rho, 5.0, 1.0, 0.0),
                  param_error);
}

TEST_CASE("mean field: complete screening outside a neutral density") {
  auto g = radial::make_grid(8.0, 3000, GridScheme::uniform);
  auto rho = uniform_ball(g, 5.0, 1.0);
  // interpolant charge differs from the nominal 5 by the edge cell
  const double qi = radial::integrate_volume(rho);
  CHECK(std::abs(radial::mean_field(rho, 5.0, 2.0) - (5.0 - qi) / 2.0) <
        1e-10);
  RadialFunction zero(g, Kind::density);
  CHECK(radial::mean_field(zero, 5.0, 2.5) == doctest::Approx(2.0));
}

TEST_CASE("shell theorem at quadrature tolerance for arbitrary densities") {
  auto g = radial::make_grid(10.0, 4000, GridScheme::uniform);
  RadialFunction rho(g, Kind::density);
  for (int i = 0; i < g->n(); ++i) {
    const double r = g->r[i];
    rho.v[i] = r < 2.0 ? r * r * std::exp(-r) : 0.0;
  }
  const double Q = radial::integrate_volume(rho);
  for (double x : {2.0, 3.5, 8.0})
    CHECK(radial::newton_potential_at(rho, x) ==
          doctest::Approx(Q / x).epsilon(1e-10));
}

TEST_CASE("counorm split inequalities") {
  auto g = radial::make_grid(8.0, 1500, GridScheme::uniform);
  auto f = uniform_ball(g, 2.0, 1.5);
  for (double s : {0.5, 1.0, 3.0}) {
    const auto res = radial::counorm_split_check(f, 2.0, s, 0.25);
    CHECK(res.holds1);
    CHECK(res.holds2);
  }
  // signed density
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  RadialFunction fs(g, Kind::density);
  for (int i = 0; i < g->n(); ++i)
    fs.v[i] = dist(rng) * std::exp(-g->r[i]);
  const auto res = radial::counorm_split_check(fs, 1.0, 0.8, 0.2);
  CHECK(res.holds1);
  CHECK(res.holds2);
  // f = 0: all sides vanish
  RadialFunction zero(g, Kind::density);
  const auto rz = radial::counorm_split_check(zero, 1.0, 1.0, 0.25);
  CHECK(rz.lhs1 == 0.0);
  CHECK(rz.holds1);
  CHECK(rz.holds2);
  CHECK_THROWS_AS(radial::counorm_split_check(f, 1.0, 1.0, 0.7), param_error);
}

TEST_CASE("csv round trip") {
  auto g = radial::make_grid(3.0, 64, GridScheme::uniform);
  auto rho = gaussian_density(g, 0.5);
  const std::string path = "radial_test_roundtrip.csv";
  radial::write_csv(rho, path);
  auto back = radial::read_csv(g, path, Kind::density);
  for (int i = 0; i < g->n(); ++i) CHECK(back.v[i] == rho.v[i]);
  std::remove(path.c_str());
}

TEST_CASE("grid refinement: D(rho, rho) stable under doubling") {
  auto coarse = radial::make_grid(10.0, 1500, GridScheme::uniform);
  auto fine = radial::make_grid(10.0, 3000, GridScheme::uniform);
  auto rc = gaussian_density(coarse, 1.0);
  auto rf = gaussian_density(fine, 1.0);
  const double dc = radial::coulomb_inner(rc, rc);
  const double df = radial::coulomb_inner(rf, rf);
  CHECK(std::abs(dc - df) / df < 1e-4);
}

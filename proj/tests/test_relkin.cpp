#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>
#include <vector>

#include "atomscope/common.hpp"
#include "atomscope/relkin.hpp"
#include "doctest.h"

using namespace atomscope;
using constants::pi;

TEST_CASE("kinetic symbol basics") {
  CHECK(relkin::kinetic_symbol(0.0, 1.0) == 0.0);
  CHECK(relkin::kinetic_symbol(3.0, 1.0) ==
        doctest::Approx(std::sqrt(10.0) - 1.0).epsilon(1e-15));
  // nonrelativistic limit: T(p)/alpha -> p^2/2
  CHECK(relkin::kinetic_symbol(1.0, 1e-4) / 1e-4 ==
        doctest::Approx(0.5).epsilon(1e-6));
  CHECK_THROWS_AS(relkin::kinetic_symbol(1.0, 0.0), param_error);
  CHECK_THROWS_AS(relkin::kinetic_symbol(-1.0, 1.0), param_error);
}

TEST_CASE("T monotone and dominated by p^2/2 in units of alpha") {
  relkin::KineticSymbol T(0.3);
  double prev = 0.0;
  for (int i = 1; i <= 300; ++i) {
    const double p = 0.1 * i;
    const double t = T(p);
    CHECK(t >= prev);
    CHECK(t / 0.3 <= 0.5 * p * p * (1.0 + 1e-14));
    prev = t;
  }
}

TEST_CASE("daubechies g values") {
  CHECK(relkin::daubechies_g(0.0) == 0.0);
  CHECK(relkin::daubechies_g(1.0) ==
        doctest::Approx(3.0 * std::sqrt(2.0) - std::log(1.0 + std::sqrt(2.0)))
            .epsilon(1e-15));
  // g(1) - 8/3 inside the sandwich [0.24, 0.8]
  const double ex = relkin::daubechies_g_excess(1.0);
  CHECK(ex == doctest::Approx(0.6946004).epsilon(1e-6));
  CHECK(ex >= 0.24);
  CHECK(ex <= 0.8);
  CHECK_THROWS_AS(relkin::daubechies_g(-0.1), param_error);
}

TEST_CASE("g excess series agrees with the direct form near the switch") {
  for (double t : {0.05, 0.09, 0.0999, 0.1001, 0.12}) {
    const double direct =
        relkin::daubechies_g(t) - (8.0 / 3.0) * t * t * t;
    CHECK(relkin::daubechies_g_excess(t) ==
          doctest::Approx(direct).epsilon(1e-9));
  }
}

TEST_CASE("G_alpha basics and small-alpha limit") {
  CHECK(relkin::daubechies_G(0.0, 1.0, 2) == 0.0);
  const auto sw = relkin::daubechies_G_sandwich(1.0, 1.0, 2);
  CHECK(sw.lower <= sw.value);
  CHECK(sw.value <= sw.upper);
  // alpha -> 0: G/alpha -> (3/10) C^{-2/3} rho^{5/3}  (from the t^5 series term)
  const double C = 0.163 * 2;
  const double limit = 0.3 * std::pow(C, -2.0 / 3.0);
  CHECK(relkin::daubechies_G(1.0, 1e-6, 2) / 1e-6 ==
        doctest::Approx(limit).epsilon(1e-4));
  CHECK_THROWS_AS(relkin::daubechies_G(-1.0, 1.0, 2), param_error);
}

TEST_CASE("natale sandwich on random samples") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> dist(0.0, 100.0);
  for (int i = 0; i < 10000; ++i) {
    const double t = dist(rng);
    const double ex = relkin::daubechies_g_excess(t);
    const double m = std::min(0.4 * t, 1.0);
    const double t4 = t * t * t * t;
    CHECK(0.6 * t4 * m <= ex * (1.0 + 1e-12));
    CHECK(ex <= 2.0 * t4 * m * (1.0 + 1e-12));
  }
}

TEST_CASE("BehG sandwich on random samples") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> lr(std::log(1e-6), std::log(1e6));
  std::uniform_real_distribution<double> la(std::log(1e-4), 0.0);
  const int qs[3] = {1, 2, 4};
  for (int i = 0; i < 10000; ++i) {
    const auto sw = relkin::daubechies_G_sandwich(std::exp(lr(rng)),
                                                  std::exp(la(rng)),
                                                  qs[i % 3]);
    CHECK(sw.lower <= sw.value * (1.0 + 1e-12));
    CHECK(sw.value <= sw.upper * (1.0 + 1e-12));
  }
}

TEST_CASE("F(s): value, bound, scaling") {
  CHECK(relkin::lt_F(0.0, 1.0) == 0.0);
  // int_0^1 (t^2+2t)^{3/2} dt, frozen from an independent quadrature oracle
  CHECK(relkin::lt_F(1.0, 1.0) ==
        doctest::Approx(1.7928973170234642).epsilon(1e-10));
  CHECK(relkin::lt_F(1.0, 1.0) <= 1.6 + 1.0 / (2.0 * std::sqrt(2.0)));
  // F(s, alpha) = alpha^{-4} F(alpha s, 1)
  CHECK(relkin::lt_F(2.0, 0.5) ==
        doctest::Approx(std::pow(0.5, -4.0) * relkin::lt_F(1.0, 1.0))
            .epsilon(1e-8));
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> ls(std::log(1e-2), std::log(50.0));
  std::uniform_real_distribution<double> la(std::log(1e-3), 0.0);
  for (int i = 0; i < 1000; ++i) {
    const double s = std::exp(ls(rng));
    const double a = std::exp(la(rng));
    CHECK(relkin::lt_F(s, a) <= relkin::lt_F_bound(s, a) * (1.0 + 1e-10));
  }
}

TEST_CASE("K2: value, moment, decay bound") {
  CHECK(relkin::bessel_K2(1.0) ==
        doctest::Approx(1.6248388986351775).epsilon(1e-9));
  CHECK(relkin::bessel_K2_moment2() ==
        doctest::Approx(1.5 * pi).epsilon(1e-9));
  double prev = 1e300;
  for (double t : {0.5, 1.0, 2.0, 5.0, 10.0}) {
    const double k2 = relkin::bessel_K2(t);
    CHECK(k2 <= 16.0 / (t * t) * std::exp(-0.5 * t));
    CHECK(k2 < prev);
    prev = k2;
  }
  CHECK_THROWS_AS(relkin::bessel_K2(0.0), param_error);
}

namespace {
// normalized Gaussian profile f = pi^{-3/4} exp(-r^2/2) on a radial mesh
void gaussian_profile(std::vector<double>& r, std::vector<double>& f,
                      double width = 1.0, double shift = 0.0) {
  const int n = 3000;
  const double rmax = 12.0 * width + shift;
  r.resize(n);
  f.resize(n);
  const double norm = std::pow(pi * width * width, -0.75);
  for (int i = 0; i < n; ++i) {
    r[i] = rmax * (i + 1) / n;
    const double d = (r[i] - shift) / width;
    f[i] = norm * std::exp(-0.5 * d * d);
  }
}
}  // namespace

TEST_CASE("Kato check on the unit Gaussian: closed forms") {
  std::vector<double> r, f;
  gaussian_profile(r, f);
  const auto res = relkin::check_kato(r, f, 1.0);
  CHECK(res.lhs == doctest::Approx(2.0 / std::sqrt(pi)).epsilon(1e-8));
  CHECK(res.rhs == doctest::Approx(std::sqrt(pi)).epsilon(1e-6));
  CHECK(res.holds);
}

TEST_CASE("Kato scaling invariance") {
  // f_lambda(x) = lambda^{3/2} f(lambda x): both sides scale by lambda
  std::vector<double> r1, f1, r2, f2;
  gaussian_profile(r1, f1, 1.0);
  gaussian_profile(r2, f2, 0.5);  // lambda = 2 image of the unit Gaussian
  const auto a = relkin::check_kato(r1, f1, 1.0);
  const auto b = relkin::check_kato(r2, f2, 1.0);
  CHECK(b.lhs / a.lhs == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(b.rhs / a.rhs == doctest::Approx(2.0).epsilon(1e-5));
}

TEST_CASE("Herbst check: Gaussian closed form and decoupled regimes") {
  std::vector<double> r, f;
  gaussian_profile(r, f);
  const auto res = relkin::check_herbst_constant(r, f, 1.0);
  // lhs = (2/sqrt(pi)) / (1 + 1/pi); rhs via the momentum quadrature oracle
  CHECK(res.lhs ==
        doctest::Approx(0.8559286241582511).epsilon(1e-7));
  CHECK(res.rhs == doctest::Approx(2.0508696176637951).epsilon(1e-5));
  CHECK(res.holds);

  // alpha -> 0 shrinks the Gaussian cutoff: lhs ~ (2/sqrt(pi))/(1 + mu) -> 0
  const auto res2 = relkin::check_herbst_constant(r, f, 0.05);
  const double mu2 = 1.0 / (pi * 0.05 * 0.05);
  CHECK(res2.lhs ==
        doctest::Approx(2.0 / std::sqrt(pi) / (1.0 + mu2)).epsilon(1e-4));
  CHECK(res2.lhs < 0.02 * res.lhs);
  CHECK(res2.holds);

  // profile supported away from the cutoff bulk: lhs exponentially small
  std::vector<double> rs, fs;
  gaussian_profile(rs, fs, 0.5, 6.0);
  const auto res3 = relkin::check_herbst_constant(rs, fs, 1.0);
  CHECK(res3.lhs < 0.01);
  CHECK(res3.rhs > 100.0 * res3.lhs);
  CHECK(res3.holds);
}

TEST_CASE("non-normalizable profile rejected") {
  std::vector<double> r(100), f(100, 0.0);
  for (int i = 0; i < 100; ++i) r[i] = 0.1 * (i + 1);
  CHECK_THROWS_AS(relkin::check_kato(r, f, 1.0), param_error);
}

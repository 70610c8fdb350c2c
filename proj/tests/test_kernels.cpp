#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>
#include <vector>

#include "atomscope/kernels.hpp"
#include "doctest.h"

using namespace atomscope;

namespace {
std::vector<double> random_vec(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> v(n);
  for (auto& x : v) x = dist(rng);
  return v;
}
}  // namespace

// The OpenMP variants keep the per-element summation order of the serial
// reference, so results must agree bitwise.
TEST_CASE("syrk omp matches serial bitwise") {
  const int n = 173;
  auto V = random_vec(static_cast<std::size_t>(n) * n, 1);
  std::vector<double> C1(V.size()), C2(V.size());
  kernels::syrk_serial(V.data(), n, C1.data());
  kernels::syrk_omp(V.data(), n, C2.data());
  CHECK(C1 == C2);
  // symmetry is structural
  for (int i = 0; i < n; i += 17)
    for (int j = 0; j < n; j += 13)
      CHECK(C1[static_cast<std::size_t>(i) * n + j] ==
            C1[static_cast<std::size_t>(j) * n + i]);
}

TEST_CASE("gemv omp matches serial bitwise") {
  const int n = 257;
  auto A = random_vec(static_cast<std::size_t>(n) * n, 2);
  auto x = random_vec(n, 3);
  std::vector<double> y1(n), y2(n);
  kernels::gemv_serial(A.data(), n, x.data(), y1.data());
  kernels::gemv_omp(A.data(), n, x.data(), y2.data());
  CHECK(y1 == y2);
}

TEST_CASE("exchange accumulation omp matches serial bitwise") {
  const int n = 97;
  auto u = random_vec(n, 4);
  std::vector<double> r(n);
  for (int i = 0; i < n; ++i) r[i] = 0.05 * (i + 1);
  std::vector<double> C1(static_cast<std::size_t>(n) * n, 0.0), C2 = C1;
  for (int l : {0, 1, 3}) {
    kernels::exchange_accumulate_serial(C1.data(), n, u.data(), r.data(), l,
                                        0.7);
    kernels::exchange_accumulate_omp(C2.data(), n, u.data(), r.data(), l,
                                     0.7);
  }
  CHECK(C1 == C2);
}

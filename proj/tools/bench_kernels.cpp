// Timing comparison of the serial reference kernels against the OpenMP
// variants:  atomscope-bench [--n 1024] [--reps 3]

#include <chrono>
#include <cstdio>
#include <random>
#include <vector>

#include "CLI11.hpp"
#include "atomscope/kernels.hpp"

namespace {

double wall() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

template <class F>
double time_best(F&& f, int reps) {
  double best = 1e300;
  for (int i = 0; i < reps; ++i) {
    const double t0 = wall();
    f();
    best = std::min(best, wall() - t0);
  }
  return best;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"atomscope kernel benchmarks (serial vs OpenMP)"};
  int n = 1024, reps = 3;
  app.add_option("--n", n, "matrix dimension");
  app.add_option("--reps", reps, "repetitions (best-of)");
  CLI11_PARSE(app, argc, argv);

  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> V(static_cast<std::size_t>(n) * n), C(V.size()),
      C2(V.size()), x(n), y(n), y2(n), r(n), u(n);
  for (auto& v : V) v = dist(rng);
  for (int i = 0; i < n; ++i) {
    x[i] = dist(rng);
    r[i] = 0.01 * (i + 1);
    u[i] = dist(rng);
  }

  using namespace atomscope::kernels;
  const double gf_syrk = 2.0e-9 * n * n * n;
  const double t1 = time_best([&] { syrk_serial(V.data(), n, C.data()); }, reps);
  const double t2 = time_best([&] { syrk_omp(V.data(), n, C2.data()); }, reps);
  std::printf("syrk      n=%5d  serial %8.3f s (%6.2f GF/s)   omp %8.3f s "
              "(%6.2f GF/s)   speedup %.2fx\n",
              n, t1, gf_syrk / t1, t2, gf_syrk / t2, t1 / t2);

  const double gf_gemv = 2.0e-9 * n * n;
  const double t3 =
      time_best([&] { gemv_serial(V.data(), n, x.data(), y.data()); }, reps);
  const double t4 =
      time_best([&] { gemv_omp(V.data(), n, x.data(), y2.data()); }, reps);
  std::printf("gemv      n=%5d  serial %8.3f s (%6.2f GF/s)   omp %8.3f s "
              "(%6.2f GF/s)   speedup %.2fx\n",
              n, t3, gf_gemv / t3, t4, gf_gemv / t4, t3 / t4);

  std::fill(C.begin(), C.end(), 0.0);
  std::fill(C2.begin(), C2.end(), 0.0);
  const double t5 = time_best(
      [&] { exchange_accumulate_serial(C.data(), n, u.data(), r.data(), 2, 0.5); },
      reps);
  const double t6 = time_best(
      [&] { exchange_accumulate_omp(C2.data(), n, u.data(), r.data(), 2, 0.5); },
      reps);
  std::printf("exchange  n=%5d  serial %8.3f s                omp %8.3f s "
              "               speedup %.2fx\n",
              n, t5, t6, t5 / t6);
  return 0;
}

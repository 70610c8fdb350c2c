#include "atomscope/kernels.hpp"

#include <cmath>

namespace atomscope::kernels {

namespace {

inline double dot_row(const double* a, const double* b, int n) {
  double s = 0.0;
  for (int k = 0; k < n; ++k) s += a[k] * b[k];
  return s;
}

inline double radial_kernel(double ri, double rj, int l) {
  const double rmin = ri < rj ? ri : rj;
  const double rmax = ri < rj ? rj : ri;
  double num = 1.0, den = rmax;
  for (int k = 0; k < l; ++k) {
    num *= rmin;
    den *= rmax;
  }
  return num / den;
}

}  // namespace

void syrk_serial(const double* V, int n, double* C) {
  for (int i = 0; i < n; ++i) {
    const double* vi = V + static_cast<std::size_t>(i) * n;
    for (int j = 0; j <= i; ++j) {
      const double s = dot_row(vi, V + static_cast<std::size_t>(j) * n, n);
      C[static_cast<std::size_t>(i) * n + j] = s;
      C[static_cast<std::size_t>(j) * n + i] = s;
    }
  }
}

void syrk_omp(const double* V, int n, double* C) {
#pragma omp parallel for schedule(dynamic, 8)
  for (int i = 0; i < n; ++i) {
    const double* vi = V + static_cast<std::size_t>(i) * n;
    for (int j = 0; j <= i; ++j) {
      const double s = dot_row(vi, V + static_cast<std::size_t>(j) * n, n);
      C[static_cast<std::size_t>(i) * n + j] = s;
      C[static_cast<std::size_t>(j) * n + i] = s;
    }
  }
}

void gemv_serial(const double* A, int n, const double* x, double* y) {
  for (int i = 0; i < n; ++i)
    y[i] = dot_row(A + static_cast<std::size_t>(i) * n, x, n);
}

void gemv_omp(const double* A, int n, const double* x, double* y) {
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n; ++i)
    y[i] = dot_row(A + static_cast<std::size_t>(i) * n, x, n);
}

void exchange_accumulate_serial(double* C, int n, const double* u,
                                const double* r, int l, double w) {
  for (int i = 0; i < n; ++i) {
    const double wui = w * u[i];
    double* Ci = C + static_cast<std::size_t>(i) * n;
    for (int j = 0; j < n; ++j)
      Ci[j] += wui * u[j] * radial_kernel(r[i], r[j], l);
  }
}

void exchange_accumulate_omp(double* C, int n, const double* u,
                             const double* r, int l, double w) {
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n; ++i) {
    const double wui = w * u[i];
    double* Ci = C + static_cast<std::size_t>(i) * n;
    for (int j = 0; j < n; ++j)
      Ci[j] += wui * u[j] * radial_kernel(r[i], r[j], l);
  }
}

void syrk(const double* V, int n, double* C) {
#ifdef _OPENMP
  syrk_omp(V, n, C);
#else
  syrk_serial(V, n, C);
#endif
}

void gemv(const double* A, int n, const double* x, double* y) {
#ifdef _OPENMP
  gemv_omp(A, n, x, y);
#else
  gemv_serial(A, n, x, y);
#endif
}

void exchange_accumulate(double* C, int n, const double* u, const double* r,
                         int l, double w) {
#ifdef _OPENMP
  exchange_accumulate_omp(C, n, u, r, l, w);
#else
  exchange_accumulate_serial(C, n, u, r, l, w);
#endif
}

}  // namespace atomscope::kernels

#pragma once

#include <cstddef>
#include <vector>

// Dense data-parallel kernels used by the channel-operator construction and
// the SCF inner loops.  Each kernel has a serial reference implementation and
// an OpenMP variant; the OpenMP variants split work by output element and
// keep the per-element summation order identical, so both produce bitwise
// identical results (asserted in tests, timed in the bench tool).

namespace atomscope::kernels {

// C = V * V^T for row-major n x n V.  Writes the full symmetric result.
void syrk_serial(const double* V, int n, double* C);
void syrk_omp(const double* V, int n, double* C);

// y = A * x, A dense row-major n x n.
void gemv_serial(const double* A, int n, const double* x, double* y);
void gemv_omp(const double* A, int n, const double* x, double* y);

// Rank-structured kernel accumulation used for the exchange operator:
//   C[i][j] += w * u[i] * u[j] * k(i,j)  with  k(i,j) = rmin^l / rmax^{l+1}
// for radii r[i], r[j].
void exchange_accumulate_serial(double* C, int n, const double* u,
                                const double* r, int l, double w);
void exchange_accumulate_omp(double* C, int n, const double* u,
                             const double* r, int l, double w);

// Dispatchers: OpenMP variants when built with OpenMP, else serial.
void syrk(const double* V, int n, double* C);
void gemv(const double* A, int n, const double* x, double* y);
void exchange_accumulate(double* C, int n, const double* u, const double* r,
                         int l, double w);

}  // namespace atomscope::kernels

#pragma once

#include <functional>

namespace atomscope::quadrature {

struct Options {
  double rel_tol = 1e-10;
  double abs_tol = 1e-14;
  int max_intervals = 4000;  // hard subdivision cap; exceeding it throws
};

// Adaptive Gauss-Kronrod (7,15) on [a, b].  Throws solver_error if the
// requested tolerance cannot be met within the subdivision cap.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const Options& opt = {});

// Adaptive quadrature on [a, inf) via the rational map t = a + s/(1-s).
double integrate_to_inf(const std::function<double(double)>& f, double a,
                        const Options& opt = {});

}  // namespace atomscope::quadrature

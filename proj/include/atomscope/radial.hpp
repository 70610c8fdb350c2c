#pragma once

#include <memory>
#include <string>
#include <vector>

namespace atomscope::radial {

enum class GridScheme { uniform, log_uniform };
enum class Kind { density, potential, reduced_orbital };

// Radial abscissas r_1 < ... < r_n = r_max with quadrature weights such
// that  int f dV ~ sum_i w_vol[i] f(r_i)  for spherically symmetric f
// (w_vol[i] = w[i] * 4 pi r_i^2 in the notation of the volume contract).
// Weights come from exact integration of the piecewise-linear interpolant
// against the 4 pi r^2 dr measure, with constant extension on [0, r_1];
// they are positive and reproduce the ball volume exactly.
struct RadialGrid {
  std::vector<double> r;
  std::vector<double> w_vol;  // weights for the 4 pi r^2 dr measure
  std::vector<double> w_dr;   // weights for the plain dr measure (u(0)=0 run-in)
  double r_max = 0.0;
  GridScheme scheme = GridScheme::uniform;
  int n() const { return static_cast<int>(r.size()); }
  bool is_uniform() const { return scheme == GridScheme::uniform; }
  double spacing() const { return r.size() > 1 ? r[1] - r[0] : r_max; }
};

using GridPtr = std::shared_ptr<const RadialGrid>;

GridPtr make_grid(double r_max, int n, GridScheme scheme,
                  double r_min_factor = 1e-6);

struct RadialFunction {
  GridPtr grid;
  std::vector<double> v;
  Kind kind = Kind::density;

  RadialFunction() = default;
  RadialFunction(GridPtr g, Kind k) : grid(std::move(g)), kind(k) {
    v.assign(grid->r.size(), 0.0);
  }
  RadialFunction(GridPtr g, std::vector<double> vals, Kind k)
      : grid(std::move(g)), v(std::move(vals)), kind(k) {}
};

// int f dV  with the volume weights.
double integrate_volume(const RadialFunction& f);

// int_0^r 4 pi s^2 f(s) ds, exact on the interpolant, at an arbitrary radius.
double cumulative_charge(const RadialFunction& f, double r);

// (rho * |x|^{-1})(r) at every node:
//   (1/r) int_0^r 4 pi s^2 rho ds + int_r^rmax 4 pi s rho ds.
RadialFunction newton_potential(const RadialFunction& rho);

// Same convolution at an arbitrary radius x (x beyond r_max sees Q/x).
double newton_potential_at(const RadialFunction& rho, double x);

// Coulomb inner product D(f,g) = (1/2) int f (g * |x|^{-1}).
// Evaluated on node-lumped charges q_i = w_vol[i] f_i against the kernel
// 1/max(r_i, r_j), which is a Gram form: D is exactly symmetric and
// positive semidefinite at the discrete level.
double coulomb_inner(const RadialFunction& f, const RadialFunction& g);
double coulomb_norm(const RadialFunction& f);

// Phi_R(x) = Z/x - int_{|y|<R} rho(y)/|x-y| dy  (Newton on the truncated
// density; the interpolant is integrated exactly up to R).
double screened_potential(const RadialFunction& rho, double Z, double R,
                          double x);

// phi(x) = Z/x - (rho * |.|^{-1})(x).
double mean_field(const RadialFunction& rho, double Z, double x);

// Both inequalities of the Coulomb-norm splitting estimate:
//  (1) (f*|.|^{-1})(x) <= int_{|x-y|<s} [f]_+ (1/|x-y| - 1/s) dy
//                          + sqrt(2) s^{-1/2} ||f||_C
//  (2) int_{|y|<x} f/|x-y| dy <= int_{A(x,k)} [f]_+/|x-y| dy
//                          + 2^{3/2} k^{-1} x^{-1/2} ||f||_C
// with A(x,k) the annulus (1-2k)x <= |y| <= x.
struct CounormSplit {
  double lhs1, rhs1, lhs2, rhs2;
  bool holds1, holds2;
};
CounormSplit counorm_split_check(const RadialFunction& f, double x, double s,
                                 double k);

// CSV "r,value" in scientific notation with 17 significant digits.
void write_csv(const RadialFunction& f, const std::string& path);
RadialFunction read_csv(GridPtr grid, const std::string& path, Kind kind);

}  // namespace atomscope::radial

#pragma once

#include <memory>
#include <vector>

#include "atomscope/radial.hpp"

// Atomic Thomas-Fermi solver (neutral and ionic), the outside-TF model,
// Sommerfeld envelopes, TF radius, and the e0 constant.
//
// Neutral atoms reduce to the universal dimensionless profile
//   y'' = y^{3/2} / sqrt(t),  y(0) = 1,  y(inf) = 0,
// via  phi(r) - mu = (Z/r) y(r/b),  b = gamma (4 pi)^{-2/3} Z^{-1/3},
// gamma = (1/2)(6 pi^2/q)^{2/3}.  Energies and radii computed in the
// dimensionless frame scale exactly: E(Z) = -e0(q) Z^{7/3}.

namespace atomscope::thomasfermi {

// Universal neutral profile on a graded mesh t = x^2 (production: BVP with
// Newton iteration; the shooting route below is the acceptance oracle).
struct TFProfile {
  std::vector<double> x;     // uniform mesh in x = sqrt(t)
  std::vector<double> t, y;  // y(t_i)
  double B = 0.0;            // -y'(0)
  double t_max = 0.0;
  double y_at(double t) const;            // linear interpolation, Sommerfeld tail beyond t_max
  double outer_fraction(double t) const;  // (y - t y')(t) = Z^{-1} int_{>t} rho
  double inner_fraction(double t) const { return 1.0 - outer_fraction(t); }
  double t_for_outer_fraction(double frac) const;
};

// Cached production profile (built once, thread-safe).
const TFProfile& tf_profile();

// Shooting oracle: bisection on the initial slope with an RK4 integrator in
// x = sqrt(t) (series start near 0).  Returns the profile up to t_cap and
// B = -y'(0).  step_x is the RK4 step; run twice (h, h/2) for a Richardson
// consistency check.
struct ShootingResult {
  double B;
  std::vector<double> t, y;
};
ShootingResult solve_tf_dimensionless(double tol, double step_x = 2.5e-4,
                                      double t_cap = 40.0);

struct PhysicalParams {
  double Z = 1.0;
  double N = 1.0;
  int q = 2;
  double alpha = 0.0;  // unused by TF
};

struct TFSolution {
  PhysicalParams params;
  radial::GridPtr grid;
  radial::RadialFunction rho;  // density on the grid
  radial::RadialFunction phi;  // mean-field potential on the grid
  double mu = 0.0;
  double energy = 0.0;
  double total_charge = 0.0;  // int rho over the grid
  double residual = 0.0;      // max TF-equation residual on the grid
  double b = 0.0;             // length scale
  double ion_X = -1.0;        // ionic boundary in t units (< 0: neutral)
  double ion_slope = 0.0;     // y'(X) for ions
  std::shared_ptr<const TFProfile> ion_profile;  // ionic dimensionless profile
};

// gamma = (1/2)(6 pi^2 / q)^{2/3}; TF kinetic coefficient is (3/5) gamma.
double tf_gamma(int q);
// e0(q): neutral binding energy per Z^{7/3} (cached per q; functional route).
double tf_e0(int q);
// Cross-check route: e0 = (3/7) B / b1(q).
double tf_e0_slope_route(int q);

TFSolution solve_tf_atom(double Z, double N, int q, radial::GridPtr grid);

// Outside Thomas-Fermi: minimize the TF functional with external potential
// V_r (zero inside the cut ball, sampled data outside, 1/x tail beyond the
// last sample) under int rho <= N_out.  Damped fixed point on phi with the
// chemical potential re-bisected each sweep.
struct OTFInput {
  std::vector<double> r;  // sample radii (>= cut)
  std::vector<double> v;  // potential samples
  double cut = 0.0;
  double N_out = 0.0;
  int q = 2;
};

struct OTFSolution {
  OTFInput input;
  radial::GridPtr grid;
  radial::RadialFunction rho;
  radial::RadialFunction phi;  // OTF mean-field potential V_r - rho * 1/|x|
  double mu = 0.0;
  double residual = 0.0;
  int sweeps = 0;
};

struct OTFOptions {
  double damping = 0.5;
  int max_sweeps = 500;
  double tol = 1e-9;  // sup-norm fixed-point tolerance relative to max phi
};

OTFSolution solve_otf(const OTFInput& in, radial::GridPtr grid,
                      const OTFOptions& opt = {});

// Sommerfeld envelopes.
struct SommerfeldEnvelope {
  int q;
  double Z;
  double zeta;   // (-7 + sqrt 73)/2
  double beta0;  // (1/2) pi^{2/3} 3^{-5/3} 2^{-1/3} q^{-2/3}
  double a;      // beta0^zeta (3^2 pi / (q beta0^{3/2}) - 1)
  SommerfeldEnvelope(double Z_, int q_);
};

struct Envelope {
  double lower, upper;
};
// lower: branch formula at beta0 Z^{-1/3}; upper: min{3^4 pi^2/(2q^2) x^-4, Z/x}.
Envelope sommerfeld_bounds(double x, const SommerfeldEnvelope& env);

// R with int_{|x|>R} rho = nu (profile-based cumulative, monotone).
double tf_radius(const TFSolution& sol, double nu);

struct BoundCheck {
  double lhs, rhs;
  bool holds;
  double margin;  // rhs / lhs
};
// int (rho^TF)^{5/3} <= 4 (2^{2/3}/pi^2)(5/7) q^{4/3} Z^{7/3}  (neutral).
BoundCheck rho_53_bound_check(const TFSolution& sol);

// Dimensionless int rho^{5/3} per Z^{7/3} (used by the bound check and tests).
double tf_I53(int q);

// TF functional evaluated with the grid quadrature on the stored (rho, phi);
// converges to sol.energy under grid refinement (diagnostic).
double grid_functional_energy(const TFSolution& sol);

// Export: CSV "r,rho,phi" plus JSON sidecar
// {Z,N,q,mu,energy,total_charge,residual}.
void export_solution(const TFSolution& sol, const std::string& csv_path,
                     const std::string& json_path);

}  // namespace atomscope::thomasfermi

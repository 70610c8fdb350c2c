#pragma once

#include <string>
#include <vector>

#include "atomscope/radial.hpp"

// Radial (central-field) pseudo-relativistic Hartree-Fock.  The kinetic
// operator per angular channel is the exact matrix function
//   alpha^{-1} (sqrt(A + alpha^{-2}) - alpha^{-1}),
//   A = -d^2/dr^2 + l(l+1)/r^2  (Dirichlet, uniform grid),
// realized through the dense eigendecomposition of the tridiagonal A.
//
// Shell model: occupations are spread evenly over the q(2l+1) states of a
// shell ("spin-balanced" density-matrix smearing), which yields a single
// Fock operator per channel (exchange kernel weights f_b/q), automatic
// orthogonality within a channel, and a vanishing Euler-Lagrange residual
// at convergence.  The one-electron atom is treated with a rank-one density
// matrix instead, for which direct and exchange cancel identically.

namespace atomscope::hartreefock {

enum class KineticMode { relativistic, nonrelativistic };

struct ChannelOperator {
  radial::GridPtr grid;
  int ell = 0;
  double alpha = 0.0;
  KineticMode mode = KineticMode::relativistic;
  std::vector<double> T;  // dense n x n kinetic matrix (row-major, symmetric)
};

ChannelOperator build_channel_kinetic(radial::GridPtr grid, int ell,
                                      double alpha, KineticMode mode);

struct EigenPair {
  double eps;
  std::vector<double> u;  // grid-normalized: h * sum u^2 = 1, u[0] > 0
};

// Lowest eigenpairs of T + diag(vlocal) - X (X optional dense kernel).
std::vector<EigenPair> lowest_eigenpairs(const ChannelOperator& op,
                                         const std::vector<double>& vlocal,
                                         int count,
                                         const std::vector<double>* xkernel =
                                             nullptr);

struct Shell {
  int n = 1;    // principal index (1-based within the channel)
  int ell = 0;
  double occ = 0.0;
  double eps = 0.0;
  std::vector<double> u;
};

// Slater potential factor v_k(a,b; r) = (1/r^{k+1}) int_0^r s^k a b ds
//                                      + r^k int_r^inf s^{-(k+1)} a b ds.
std::vector<double> slater_vk(const radial::RadialGrid& grid,
                              const std::vector<double>& ua,
                              const std::vector<double>& ub, int k);

// Radial Slater integral G^k(a,b) = int ua ub v_k(ua,ub) dr;
// F^0(a,b) = int ua^2 v_0(ub,ub) dr.
double slater_Gk(const radial::RadialGrid& grid, const std::vector<double>& ua,
                 const std::vector<double>& ub, int k);
double slater_F0(const radial::RadialGrid& grid, const std::vector<double>& ua,
                 const std::vector<double>& ub);

// Squared 3j symbol (la lb k; 0 0 0)^2; zero unless la+lb+k even + triangle.
double threej000_sq(int la, int lb, int k);

// Spherically averaged Hartree potential of the shell set.
radial::RadialFunction direct_potential(const std::vector<Shell>& shells,
                                        const radial::GridPtr& grid);

// Exchange action on a target shell:
//   (X u_t)(r) = sum_b (f_b/q) sum_k (la lb k;000)^2 v_k(u_b, u_t; r) u_b(r).
std::vector<double> exchange_apply(const std::vector<Shell>& shells,
                                   const Shell& target,
                                   const radial::GridPtr& grid, int q);

struct EnergyBreakdown {
  double kinetic = 0.0;
  double nuclear = 0.0;   // int Z rho / r  (enters with a minus sign)
  double direct = 0.0;
  double exchange = 0.0;
  double total = 0.0;     // kinetic - nuclear + direct - exchange
};

struct HFConfig {
  double damping = 0.3;
  int max_iter = 300;
  double tol_eps = 1e-8;   // relative orbital-energy change
  double tol_rho = 1e-8;   // L1 density change per electron
  double bind_tol = 1e-6;  // |eps| below this counts as unbound
  int lmax = 2;
  int eigs_per_channel = 7;
  KineticMode mode = KineticMode::relativistic;
  bool tf_start = true;
};

struct HFSolution {
  double Z = 0.0;
  double N = 0.0;
  int q = 2;
  double alpha = 0.0;
  radial::GridPtr grid;
  std::vector<Shell> shells;
  radial::RadialFunction rho;
  EnergyBreakdown energy;
  int iterations = 0;
  bool converged = false;
  bool unbound_last = false;  // requested N-th electron failed to bind
  double el_residual = 0.0;   // max_i ||h u_i - eps_i u_i||_2
  double damping_used = 0.0;
};

HFSolution scf_solve(double Z, double N, double alpha, int q,
                     radial::GridPtr grid, const HFConfig& cfg = {});

// Phi_R^HF(x) from the converged density.
double hf_screened_potential(const HFSolution& sol, double R, double x);
double hf_mean_field(const HFSolution& sol, double x);

// R with int_{|x|>R} rho^HF = nu.
double hf_radius(const HFSolution& sol, double nu);

// Daubechies kinetic bound in the paper normalization:
//   alpha * kinetic >= int G_alpha(rho^HF).
struct TraceBound {
  double lhs, rhs;
  bool holds;
};
TraceBound daubechies_trace_check(const HFSolution& sol);

// Exchange inequality  Ex <= 1.68 int rho^{4/3}.
TraceBound exchange_bound_check(const HFSolution& sol);

// HF energy lower bound  total >= -2 C^{2/3} Z^2 N^{1/3} - C kappa^2 Z^2.
TraceBound energy_lower_bound_check(const HFSolution& sol, double C = -1.0);

// Export: JSON summary plus CSV "r,rho" and per-shell "r,u".
void export_solution(const HFSolution& sol, const std::string& json_path,
                     const std::string& rho_csv_path,
                     const std::string& shell_csv_prefix);

}  // namespace atomscope::hartreefock

#pragma once

#include <vector>

#include "atomscope/hartreefock.hpp"
#include "atomscope/radial.hpp"
#include "atomscope/thomasfermi.hpp"

// Phase-space (coherent-state) functionals: the Weyl term, the alpha^2 and
// alpha^4 relativistic corrections, the Daubechies-Lieb-Yau lower bound and
// coherent-state completeness checks on Gaussians.

namespace atomscope::semiclassics {

struct RadialWindow {
  double lo = 0.0;
  double hi = 1e300;
};

// -(2^{3/2} q / 15 pi^2) int_window [phi]_+^{5/2} dV.
double weyl_term(const radial::RadialFunction& phi, int q,
                 const RadialWindow& window = {});

// Relativistic correction terms from the semiclassical expansion
//   corr72 = pref * 2^{-3/2} (q/pi^2) alpha^2 int [phi]_+^{7/2} dV
//   corr92 = pref * 2^{-9/2} (q/pi^2) alpha^4 int [phi]_+^{9/2} dV
// (pref = 1 reproduces the q/(2 pi)^3 phase-space normalization).  The
// integrands scale like r^{2-7/2} and r^{2-9/2} for Coulombic phi, so the
// window must exclude a core ball (lo > 0).
struct Corrections {
  double corr72, corr92;
};
Corrections relativistic_corrections(const radial::RadialFunction& phi, int q,
                                     double alpha, const RadialWindow& window,
                                     double prefactor = 1.0);

struct PhaseSpaceBudget {
  double weyl, corr72, corr92;
};
PhaseSpaceBudget phase_space_budget(const radial::RadialFunction& phi, int q,
                                    double alpha, const RadialWindow& window);

// Daubechies-Lieb-Yau lower bound on Tr[T(p) - U]_-:
//   -C kappa^{5/2} alpha^{-3/2} R^{1/2} - C kappa^4 / alpha
//   - C int_{|x|>R} (alpha^{-3/2} |U|^{5/2} + |U|^4) dV.
// Requires 0 <= U(x) <= kappa/|x| for |x| < max(alpha, R).
double dly_bound(const radial::RadialFunction& U, double alpha, double kappa,
                 double R, double C);

// Coherent-state completeness on Gaussians: f width a (normalized), window
// g width b.  lhs = (f,f) by radial quadrature; rhs = the phase-space double
// integral reduced to closed form.
struct CompletenessCheck {
  double lhs, rhs, rel_err;
};
CompletenessCheck coherent_completeness_check(double width_f, double width_g);

// Potential-weighted variant: (f, (V * g^2) f) with V a Gaussian of width c
// and amplitude v0, against the phase-space side (2pi)^-3 int V(q) |(f,g^pq)|^2.
CompletenessCheck coherent_potential_check(double width_f, double width_g,
                                           double width_v, double v0);

// TF-vs-HF energy comparison row.
struct GapRow {
  double Z, N, alpha;
  double e_hf, e_tf, gap;       // gap = e_hf - e_tf
  double gap_per_z2, gap_per_z73;
};
GapRow tf_vs_hf_energy_gap(const thomasfermi::TFSolution& tf,
                           const hartreefock::HFSolution& hf);

}  // namespace atomscope::semiclassics

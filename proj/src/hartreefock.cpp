#include "atomscope/hartreefock.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <numeric>

#include "atomscope/common.hpp"
#include "atomscope/kernels.hpp"
#include "atomscope/relkin.hpp"
#include "atomscope/thomasfermi.hpp"

namespace atomscope::hartreefock {

using constants::pi;

namespace {

void require_uniform(const radial::RadialGrid& g, const char* who) {
  if (!g.is_uniform())
    throw param_error(std::string(who) +
                      ": spectral kinetic realization requires a uniform grid");
}

// int_a^b s^p ds
inline double power_moment(double p, double a, double b) {
  if (p == -1.0) return std::log(b / a);
  return (std::pow(b, p + 1.0) - std::pow(a, p + 1.0)) / (p + 1.0);
}

}  // namespace

ChannelOperator build_channel_kinetic(radial::GridPtr grid, int ell,
                                      double alpha, KineticMode mode) {
  require_uniform(*grid, "build_channel_kinetic");
  if (ell < 0) throw param_error("build_channel_kinetic: ell must be >= 0");
  if (mode == KineticMode::relativistic && !(alpha > 0.0))
    throw param_error("build_channel_kinetic: alpha must be > 0");
  const int n = grid->n();
  const double h = grid->spacing();
  const double inv_h2 = 1.0 / (h * h);
  ChannelOperator op;
  op.grid = grid;
  op.ell = ell;
  op.alpha = alpha;
  op.mode = mode;
  op.T.assign(static_cast<std::size_t>(n) * n, 0.0);

  const double ll1 = static_cast<double>(ell) * (ell + 1);
  if (mode == KineticMode::nonrelativistic) {
    // A/2 directly; conjugating back through the eigenbasis is the identity
    for (int i = 0; i < n; ++i) {
      op.T[static_cast<std::size_t>(i) * n + i] =
          inv_h2 + 0.5 * ll1 / (grid->r[i] * grid->r[i]);
      if (i + 1 < n) {
        op.T[static_cast<std::size_t>(i) * n + i + 1] = -0.5 * inv_h2;
        op.T[static_cast<std::size_t>(i + 1) * n + i] = -0.5 * inv_h2;
      }
    }
    return op;
  }

  std::vector<double> d(n), e(n - 1, -inv_h2), z(static_cast<std::size_t>(n) *
                                                 n);
  for (int i = 0; i < n; ++i)
    d[i] = 2.0 * inv_h2 + ll1 / (grid->r[i] * grid->r[i]);
  const lapack_int info = LAPACKE_dstev(LAPACK_ROW_MAJOR, 'V', n, d.data(),
                                        e.data(), z.data(), n);
  if (info != 0)
    throw solver_error("build_channel_kinetic: dstev failed, info=" +
                       std::to_string(info));
  // V = Z diag(sqrt(f(lambda))), T = V V^T with
  // f(lambda) = lambda / (alpha sqrt(lambda + alpha^-2) + 1)
  for (int j = 0; j < n; ++j) {
    const double lam = std::max(d[j], 0.0);
    const double f =
        lam / (alpha * std::sqrt(lam + 1.0 / (alpha * alpha)) + 1.0);
    const double s = std::sqrt(f);
    for (int i = 0; i < n; ++i) z[static_cast<std::size_t>(i) * n + j] *= s;
  }
  kernels::syrk(z.data(), n, op.T.data());
  return op;
}

std::vector<EigenPair> lowest_eigenpairs(const ChannelOperator& op,
                                         const std::vector<double>& vlocal,
                                         int count,
                                         const std::vector<double>* xkernel) {
  const int n = op.grid->n();
  if (count < 1) throw param_error("lowest_eigenpairs: count must be >= 1");
  if (static_cast<int>(vlocal.size()) != n)
    throw param_error("lowest_eigenpairs: potential size mismatch");
  count = std::min(count, n);
  std::vector<double> H(op.T);
  if (xkernel) {
    if (xkernel->size() != H.size())
      throw param_error("lowest_eigenpairs: exchange kernel size mismatch");
    for (std::size_t i = 0; i < H.size(); ++i) H[i] -= (*xkernel)[i];
  }
  for (int i = 0; i < n; ++i) H[static_cast<std::size_t>(i) * n + i] += vlocal[i];

  std::vector<double> w(n), zvec(static_cast<std::size_t>(n) * count);
  std::vector<lapack_int> isuppz(2 * static_cast<std::size_t>(count));
  lapack_int m = 0;
  const lapack_int info = LAPACKE_dsyevr(
      LAPACK_ROW_MAJOR, 'V', 'I', 'L', n, H.data(), n, 0.0, 0.0, 1, count,
      0.0, &m, w.data(), zvec.data(), count, isuppz.data());
  if (info != 0 || m < count)
    throw solver_error("lowest_eigenpairs: dsyevr failed, info=" +
                       std::to_string(info));
  const double h = op.grid->spacing();
  std::vector<EigenPair> out(count);
  for (int j = 0; j < count; ++j) {
    out[j].eps = w[j];
    out[j].u.resize(n);
    for (int i = 0; i < n; ++i)
      out[j].u[i] = zvec[static_cast<std::size_t>(i) * count + j];
    int first = 0;
    while (first < n && out[j].u[first] == 0.0) ++first;
    const double sign = (first < n && out[j].u[first] < 0.0) ? -1.0 : 1.0;
    const double scale = sign / std::sqrt(h);
    for (int i = 0; i < n; ++i) out[j].u[i] *= scale;
  }
  return out;
}

std::vector<double> slater_vk(const radial::RadialGrid& grid,
                              const std::vector<double>& ua,
                              const std::vector<double>& ub, int k) {
  const int n = grid.n();
  const auto& r = grid.r;
  std::vector<double> P(n);
  for (int i = 0; i < n; ++i) P[i] = ua[i] * ub[i];
  // cumulative exact integrals of the linear interpolant of P:
  //   Zk[i] = int_0^{r_i} s^k P ds  (P linear from (0,0) on the run-in)
  //   Wk[i] = int_{r_i}^{rmax} s^{-(k+1)} P ds
  std::vector<double> Zk(n), Wk(n, 0.0);
  Zk[0] = P[0] * std::pow(r[0], k + 1.0) / (k + 2.0);
  for (int i = 0; i + 1 < n; ++i) {
    const double a = r[i], b = r[i + 1];
    const double slope = (P[i + 1] - P[i]) / (b - a);
    const double m0 = power_moment(k, a, b);
    const double m1 = power_moment(k + 1.0, a, b);
    Zk[i + 1] = Zk[i] + P[i] * m0 + slope * (m1 - a * m0);
  }
  for (int i = n - 2; i >= 0; --i) {
    const double a = r[i], b = r[i + 1];
    const double slope = (P[i + 1] - P[i]) / (b - a);
    const double m0 = power_moment(-(k + 1.0), a, b);
    const double m1 = power_moment(-static_cast<double>(k), a, b);
    Wk[i] = Wk[i + 1] + P[i] * m0 + slope * (m1 - a * m0);
  }
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i)
    v[i] = Zk[i] / std::pow(r[i], k + 1.0) + std::pow(r[i], k) * Wk[i];
  return v;
}

double slater_Gk(const radial::RadialGrid& grid, const std::vector<double>& ua,
                 const std::vector<double>& ub, int k) {
  const auto v = slater_vk(grid, ua, ub, k);
  double s = 0.0;
  for (int i = 0; i < grid.n(); ++i)
    s += grid.w_dr[i] * ua[i] * ub[i] * v[i];
  return s;
}

double slater_F0(const radial::RadialGrid& grid, const std::vector<double>& ua,
                 const std::vector<double>& ub) {
  const auto v = slater_vk(grid, ub, ub, 0);
  double s = 0.0;
  for (int i = 0; i < grid.n(); ++i)
    s += grid.w_dr[i] * ua[i] * ua[i] * v[i];
  return s;
}

double threej000_sq(int la, int lb, int k) {
  if (k < std::abs(la - lb) || k > la + lb) return 0.0;
  const int J = la + lb + k;
  if (J % 2 != 0) return 0.0;
  const int g = J / 2;
  auto lf = [](int m) { return std::lgamma(m + 1.0); };
  const double logsq = lf(2 * g - 2 * la) + lf(2 * g - 2 * lb) +
                       lf(2 * g - 2 * k) - lf(2 * g + 1) +
                       2.0 * (lf(g) - lf(g - la) - lf(g - lb) - lf(g - k));
  return std::exp(logsq);
}

radial::RadialFunction direct_potential(const std::vector<Shell>& shells,
                                        const radial::GridPtr& grid) {
  radial::RadialFunction vh(grid, radial::Kind::potential);
  for (const auto& s : shells) {
    const auto v0 = slater_vk(*grid, s.u, s.u, 0);
    for (int i = 0; i < grid->n(); ++i) vh.v[i] += s.occ * v0[i];
  }
  return vh;
}

std::vector<double> exchange_apply(const std::vector<Shell>& shells,
                                   const Shell& target,
                                   const radial::GridPtr& grid, int q) {
  if (q < 1) throw param_error("exchange_apply: q must be >= 1");
  std::vector<double> out(grid->n(), 0.0);
  for (const auto& b : shells) {
    for (int k = std::abs(b.ell - target.ell); k <= b.ell + target.ell; ++k) {
      const double c2 = threej000_sq(target.ell, b.ell, k);
      if (c2 == 0.0) continue;
      const auto vk = slater_vk(*grid, b.u, target.u, k);
      const double w = b.occ / q * c2;
      for (int i = 0; i < grid->n(); ++i) out[i] += w * vk[i] * b.u[i];
    }
  }
  return out;
}

namespace {

struct ChannelState {
  ChannelOperator op;
  std::vector<double> xkernel;  // mixed exchange kernel (includes dr weight)
  std::vector<EigenPair> pairs;
};

// candidate orbital from the channel solves
struct Candidate {
  double eps;
  int ell, n;
  const std::vector<double>* u;
};

std::vector<double> total_radial_density(const std::vector<Shell>& shells,
                                         int n) {
  std::vector<double> P(n, 0.0);
  for (const auto& s : shells)
    for (int i = 0; i < n; ++i) P[i] += s.occ * s.u[i] * s.u[i];
  return P;
}

EnergyBreakdown evaluate_energy(const std::vector<Shell>& shells,
                                const radial::GridPtr& grid, double Z, int q,
                                const std::vector<ChannelState>& chans) {
  EnergyBreakdown e;
  const int n = grid->n();
  const double h = grid->spacing();
  std::vector<double> tmp(n);
  for (const auto& s : shells) {
    kernels::gemv(chans[s.ell].op.T.data(), n, s.u.data(), tmp.data());
    double kin = 0.0, nuc = 0.0;
    for (int i = 0; i < n; ++i) {
      kin += s.u[i] * tmp[i];
      nuc += s.u[i] * s.u[i] * Z / grid->r[i];
    }
    e.kinetic += s.occ * h * kin;
    e.nuclear += s.occ * h * nuc;
  }
  for (std::size_t a = 0; a < shells.size(); ++a) {
    for (std::size_t b = 0; b < shells.size(); ++b) {
      const auto& sa = shells[a];
      const auto& sb = shells[b];
      e.direct += 0.5 * sa.occ * sb.occ * slater_F0(*grid, sa.u, sb.u);
      for (int k = std::abs(sa.ell - sb.ell); k <= sa.ell + sb.ell; ++k) {
        const double c2 = threej000_sq(sa.ell, sb.ell, k);
        if (c2 == 0.0) continue;
        e.exchange += 0.5 * sa.occ * sb.occ / q * c2 *
                      slater_Gk(*grid, sa.u, sb.u, k);
      }
    }
  }
  e.total = e.kinetic - e.nuclear + e.direct - e.exchange;
  return e;
}

// exchange kernel for channel ell (dense, includes the h quadrature weight
// so that H stays symmetric on the uniform grid)
std::vector<double> build_exchange_kernel(const std::vector<Shell>& shells,
                                          const radial::GridPtr& grid,
                                          int ell, int q) {
  const int n = grid->n();
  const double h = grid->spacing();
  std::vector<double> K(static_cast<std::size_t>(n) * n, 0.0);
  for (const auto& b : shells) {
    for (int k = std::abs(b.ell - ell); k <= b.ell + ell; ++k) {
      const double c2 = threej000_sq(ell, b.ell, k);
      if (c2 == 0.0) continue;
      kernels::exchange_accumulate(K.data(), n, b.u.data(), grid->r.data(), k,
                                   b.occ / q * c2 * h);
    }
  }
  return K;
}

HFSolution solve_one_electron(double Z, double alpha, int q,
                              radial::GridPtr grid, const HFConfig& cfg) {
  // rank-one density matrix: direct and exchange cancel identically and the
  // ground state is the lowest channel eigenvalue of T - Z/r
  HFSolution sol;
  sol.Z = Z;
  sol.N = 1.0;
  sol.q = q;
  sol.alpha = alpha;
  sol.grid = grid;
  auto op = build_channel_kinetic(grid, 0, alpha, cfg.mode);
  std::vector<double> v(grid->n());
  for (int i = 0; i < grid->n(); ++i) v[i] = -Z / grid->r[i];
  auto pairs = lowest_eigenpairs(op, v, 1);
  Shell s{1, 0, 1.0, pairs[0].eps, pairs[0].u};
  sol.shells = {s};
  const double f0 = slater_F0(*grid, s.u, s.u);
  sol.energy.kinetic = 0.0;
  {
    std::vector<double> tmp(grid->n());
    kernels::gemv(op.T.data(), grid->n(), s.u.data(), tmp.data());
    double kin = 0.0, nuc = 0.0;
    for (int i = 0; i < grid->n(); ++i) {
      kin += s.u[i] * tmp[i];
      nuc += s.u[i] * s.u[i] * Z / grid->r[i];
    }
    sol.energy.kinetic = grid->spacing() * kin;
    sol.energy.nuclear = grid->spacing() * nuc;
  }
  sol.energy.direct = 0.5 * f0;
  sol.energy.exchange = 0.5 * f0;
  sol.energy.total = sol.energy.kinetic - sol.energy.nuclear;
  sol.rho = radial::RadialFunction(grid, radial::Kind::density);
  for (int i = 0; i < grid->n(); ++i)
    sol.rho.v[i] = s.u[i] * s.u[i] / (4.0 * pi * grid->r[i] * grid->r[i]);
  sol.converged = true;
  sol.iterations = 1;
  sol.unbound_last = s.eps >= -cfg.bind_tol;
  sol.el_residual = 0.0;
  sol.damping_used = cfg.damping;
  return sol;
}

}  // namespace

HFSolution scf_solve(double Z, double N, double alpha, int q,
                     radial::GridPtr grid, const HFConfig& cfg) {
  if (!(Z > 0.0) || N < 1.0) throw param_error("scf_solve: need Z > 0, N >= 1");
  if (q < 1) throw param_error("scf_solve: q must be >= 1");
  if (cfg.mode == KineticMode::relativistic && !(Z * alpha < constants::kappa_critical))
    throw param_error("scf_solve: Z*alpha >= 2/pi (supercritical coupling)");
  require_uniform(*grid, "scf_solve");
  if (N == 1.0) return solve_one_electron(Z, alpha, q, grid, cfg);

  const int n = grid->n();
  const double h = grid->spacing();
  const int lmax = cfg.lmax;

  std::vector<ChannelState> chans(lmax + 1);
  for (int l = 0; l <= lmax; ++l)
    chans[l].op = build_channel_kinetic(grid, l, alpha, cfg.mode);

  std::vector<double> vnuc(n);
  for (int i = 0; i < n; ++i) vnuc[i] = -Z / grid->r[i];

  // TF-screened start: Hartree potential of the TF density scaled to the
  // (N-1)/Z charge each electron should feel asymptotically
  std::vector<double> vh(n, 0.0);
  if (cfg.tf_start) {
    auto tf = thomasfermi::solve_tf_atom(Z, Z, q, grid);
    auto pot = radial::newton_potential(tf.rho);
    const double scale = std::max(N - 1.0, 0.0) / Z;
    for (int i = 0; i < n; ++i) vh[i] = scale * pot.v[i];
  }

  std::vector<Shell> shells;
  std::vector<double> P_old(n, 0.0);
  double damping = cfg.damping;
  double E_prev = 0.0;
  HFSolution sol;
  sol.Z = Z;
  sol.N = N;
  sol.q = q;
  sol.alpha = alpha;
  sol.grid = grid;

  for (int iter = 1; iter <= cfg.max_iter; ++iter) {
    // solve channels with the current mixed potentials
    std::vector<Candidate> cands;
    std::vector<double> vloc(n);
    for (int l = 0; l <= lmax; ++l) {
      for (int i = 0; i < n; ++i) vloc[i] = vnuc[i] + vh[i];
      chans[l].pairs = lowest_eigenpairs(
          chans[l].op, vloc, cfg.eigs_per_channel,
          chans[l].xkernel.empty() ? nullptr : &chans[l].xkernel);
      for (int j = 0; j < static_cast<int>(chans[l].pairs.size()); ++j)
        cands.push_back({chans[l].pairs[j].eps, l, j + l + 1,
                         &chans[l].pairs[j].u});
    }
    // aufbau: sort by (eps, ell, n); fill equally across eps-degenerate tails
    std::sort(cands.begin(), cands.end(), [](const Candidate& a,
                                             const Candidate& b) {
      if (a.eps != b.eps) return a.eps < b.eps;
      if (a.ell != b.ell) return a.ell < b.ell;
      return a.n < b.n;
    });
    shells.clear();
    double remaining = N;
    bool unbound = false;
    const double tie_tol = 1e-9;
    for (std::size_t c = 0; c < cands.size() && remaining > 1e-14; ++c) {
      // degenerate group: candidates within tie_tol of this eps
      std::size_t gend = c + 1;
      while (gend < cands.size() &&
             std::abs(cands[gend].eps - cands[c].eps) <=
                 tie_tol * std::max(1.0, std::abs(cands[c].eps)))
        ++gend;
      double group_cap = 0.0;
      for (std::size_t j = c; j < gend; ++j)
        group_cap += static_cast<double>(q) * (2 * cands[j].ell + 1);
      if (remaining >= group_cap) {
        for (std::size_t j = c; j < gend; ++j) {
          const double capj = static_cast<double>(q) * (2 * cands[j].ell + 1);
          shells.push_back({cands[j].n, cands[j].ell, capj, cands[j].eps,
                            *cands[j].u});
          if (cands[j].eps >= -cfg.bind_tol) unbound = true;
        }
        remaining -= group_cap;
      } else {
        // equal fractional filling of the degenerate group
        for (std::size_t j = c; j < gend; ++j) {
          const double capj = static_cast<double>(q) * (2 * cands[j].ell + 1);
          const double occ = remaining * capj / group_cap;
          shells.push_back({cands[j].n, cands[j].ell, occ, cands[j].eps,
                            *cands[j].u});
          if (cands[j].eps >= -cfg.bind_tol) unbound = true;
        }
        remaining = 0.0;
      }
      c = gend - 1;
    }
    sol.unbound_last = unbound;

    // convergence metrics against the previous iteration
    auto P_new = total_radial_density(shells, n);
    double drho = 0.0;
    for (int i = 0; i < n; ++i) drho += h * std::abs(P_new[i] - P_old[i]);
    double deps = 0.0;
    for (const auto& s : shells) {
      double prev = 0.0;
      bool found = false;
      for (const auto& t : sol.shells)
        if (t.ell == s.ell && t.n == s.n) {
          prev = t.eps;
          found = true;
        }
      if (found)
        deps = std::max(deps,
                        std::abs(s.eps - prev) / std::max(1.0, std::abs(s.eps)));
      else
        deps = 1.0;  // occupancy structure changed
    }
    sol.shells = shells;
    P_old = P_new;

    const EnergyBreakdown e = evaluate_energy(shells, grid, Z, q, chans);
    if (iter > 10 && e.total > E_prev + 1e-12 * std::abs(E_prev))
      damping = std::max(0.5 * damping, 0.02);
    E_prev = e.total;
    sol.energy = e;
    sol.iterations = iter;

    if (iter > 2 && deps < cfg.tol_eps && drho < cfg.tol_rho * N) {
      sol.converged = true;
      break;
    }

    // rebuild potentials from the new shells and mix
    auto vh_new = direct_potential(shells, grid);
    for (int i = 0; i < n; ++i)
      vh[i] = (1.0 - damping) * vh[i] + damping * vh_new.v[i];
    for (int l = 0; l <= lmax; ++l) {
      auto K = build_exchange_kernel(shells, grid, l, q);
      if (chans[l].xkernel.empty())
        chans[l].xkernel.assign(static_cast<std::size_t>(n) * n, 0.0);
      for (std::size_t i = 0; i < K.size(); ++i)
        chans[l].xkernel[i] =
            (1.0 - damping) * chans[l].xkernel[i] + damping * K[i];
    }
  }
  sol.damping_used = damping;

  // density and Euler-Lagrange residual of the final shell set
  sol.rho = radial::RadialFunction(grid, radial::Kind::density);
  auto P = total_radial_density(sol.shells, n);
  for (int i = 0; i < n; ++i)
    sol.rho.v[i] = P[i] / (4.0 * pi * grid->r[i] * grid->r[i]);
  {
    // residual of the discrete Fock operator rebuilt (unmixed) from the
    // final shells; measures SCF self-consistency, not eigensolver accuracy
    auto vh_fin = direct_potential(sol.shells, grid);
    double res = 0.0;
    std::vector<double> hu(n), tmp(n), xu(n);
    for (int l = 0; l <= lmax; ++l) {
      bool used = false;
      for (const auto& s : sol.shells) used |= (s.ell == l);
      if (!used) continue;
      auto K = build_exchange_kernel(sol.shells, grid, l, q);
      for (const auto& s : sol.shells) {
        if (s.ell != l) continue;
        kernels::gemv(chans[l].op.T.data(), n, s.u.data(), tmp.data());
        kernels::gemv(K.data(), n, s.u.data(), xu.data());
        double norm2 = 0.0;
        for (int i = 0; i < n; ++i) {
          hu[i] = tmp[i] + (vnuc[i] + vh_fin.v[i]) * s.u[i] - xu[i] -
                  s.eps * s.u[i];
          norm2 += h * hu[i] * hu[i];
        }
        res = std::max(res, std::sqrt(norm2) / std::max(1.0, std::abs(s.eps)));
      }
    }
    sol.el_residual = res;
  }
  return sol;
}

double hf_screened_potential(const HFSolution& sol, double R, double x) {
  return radial::screened_potential(sol.rho, sol.Z, R, x);
}

double hf_mean_field(const HFSolution& sol, double x) {
  return radial::mean_field(sol.rho, sol.Z, x);
}

double hf_radius(const HFSolution& sol, double nu) {
  const double total = radial::integrate_volume(sol.rho);
  if (!(nu > 0.0 && nu < total))
    throw param_error("hf_radius: nu must be in (0, total charge)");
  double lo = sol.grid->r[0], hi = sol.grid->r_max;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double outer = total - radial::cumulative_charge(sol.rho, mid);
    (outer > nu ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

TraceBound daubechies_trace_check(const HFSolution& sol) {
  const double lhs = sol.alpha * sol.energy.kinetic;
  double rhs = 0.0;
  for (int i = 0; i < sol.grid->n(); ++i)
    rhs += sol.grid->w_vol[i] *
           relkin::daubechies_G(sol.rho.v[i], sol.alpha, sol.q);
  return {lhs, rhs, lhs >= rhs};
}

TraceBound exchange_bound_check(const HFSolution& sol) {
  double i43 = 0.0;
  for (int i = 0; i < sol.grid->n(); ++i)
    i43 += sol.grid->w_vol[i] * std::pow(sol.rho.v[i], 4.0 / 3.0);
  const double rhs = 1.68 * i43;
  return {sol.energy.exchange, rhs, sol.energy.exchange <= rhs};
}

TraceBound energy_lower_bound_check(const HFSolution& sol, double C) {
  if (C <= 0.0) C = 0.163 * sol.q;
  const double kappa = sol.Z * sol.alpha;
  const double bound = -2.0 * std::pow(C, 2.0 / 3.0) * sol.Z * sol.Z *
                           std::cbrt(sol.N) -
                       C * kappa * kappa * sol.Z * sol.Z;
  return {sol.energy.total, bound, sol.energy.total >= bound};
}

void export_solution(const HFSolution& sol, const std::string& json_path,
                     const std::string& rho_csv_path,
                     const std::string& shell_csv_prefix) {
  {
    std::ofstream js(json_path);
    if (!js) throw std::runtime_error("export_solution: cannot open " + json_path);
    char buf[256];
    js << "{\n";
    std::snprintf(buf, sizeof buf,
                  "  \"Z\": %.17g, \"N\": %.17g, \"q\": %d, \"alpha\": %.17g,\n",
                  sol.Z, sol.N, sol.q, sol.alpha);
    js << buf;
    std::snprintf(buf, sizeof buf,
                  "  \"converged\": %s, \"iterations\": %d,\n",
                  sol.converged ? "true" : "false", sol.iterations);
    js << buf;
    std::snprintf(buf, sizeof buf,
                  "  \"energy\": {\"kinetic\": %.17g, \"nuclear\": %.17g, "
                  "\"direct\": %.17g, \"exchange\": %.17g, \"total\": %.17g},\n",
                  sol.energy.kinetic, sol.energy.nuclear, sol.energy.direct,
                  sol.energy.exchange, sol.energy.total);
    js << buf;
    js << "  \"shells\": [";
    for (std::size_t i = 0; i < sol.shells.size(); ++i) {
      const auto& s = sol.shells[i];
      std::snprintf(buf, sizeof buf,
                    "%s{\"n\": %d, \"l\": %d, \"occ\": %.17g, \"eps\": %.17g}",
                    i ? ", " : "", s.n, s.ell, s.occ, s.eps);
      js << buf;
    }
    js << "]\n}\n";
  }
  radial::write_csv(sol.rho, rho_csv_path);
  for (const auto& s : sol.shells) {
    radial::RadialFunction f(sol.grid, s.u, radial::Kind::reduced_orbital);
    radial::write_csv(f, shell_csv_prefix + "_n" + std::to_string(s.n) + "l" +
                             std::to_string(s.ell) + ".csv");
  }
}

}  // namespace atomscope::hartreefock

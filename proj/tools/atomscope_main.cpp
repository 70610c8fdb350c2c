// atomscope: pseudo-relativistic Thomas-Fermi / Hartree-Fock desk experiments.
//
//   atomscope tf   --Z 10 --N 10 --q 2 --grid-n 2000 --rmax 40 --out out/
//   atomscope hf   --Z 2 --N 2 --kappa 0.001 --grid-n 2000 --rmax 20
//   atomscope otf  --Z 20 --cut 1.0 --nout 4.0
//   atomscope scan --experiment ionization --Z 2,3,4 --kappa 0.1
//   atomscope check --seed 7
//
// A key=value config file (--config) overrides flags.  ATOMSCOPE_THREADS
// caps scan parallelism.  Exit code 0 iff all asserted rows pass.

#include <cstdio>
#include <cstdlib>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "atomscope/common.hpp"
#include "atomscope/experiments.hpp"
#include "atomscope/hartreefock.hpp"
#include "atomscope/relkin.hpp"
#include "atomscope/report.hpp"
#include "atomscope/semiclassics.hpp"
#include "atomscope/thomasfermi.hpp"

namespace {

// scan-level parallelism owns the cores; keep BLAS single-threaded
void pin_blas_threads() { setenv("OPENBLAS_NUM_THREADS", "1", 0); }

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::string cur;
  for (char c : s) {
    if (c == ',' || c == ';') {
      if (!cur.empty()) out.push_back(std::stod(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(std::stod(cur));
  return out;
}

int run_property_suites(unsigned seed) {
  using namespace atomscope;
  std::mt19937_64 rng(seed);
  int failures = 0;
  auto expect = [&](bool ok, const char* what) {
    std::printf("[%s] %s\n", ok ? "PASS" : "FAIL", what);
    if (!ok) ++failures;
  };
  {
    std::uniform_real_distribution<double> dist(0.0, 100.0);
    bool ok = true;
    for (int i = 0; i < 10000; ++i) {
      const double t = dist(rng);
      const double ex = relkin::daubechies_g_excess(t);
      const double m = std::min(0.4 * t, 1.0);
      const double t4 = t * t * t * t;
      if (!(0.6 * t4 * m <= ex * (1.0 + 1e-12) &&
            ex <= 2.0 * t4 * m * (1.0 + 1e-12)))
        ok = false;
    }
    expect(ok, "g(t) - 8/3 t^3 sandwich on 10^4 samples");
  }
  {
    std::uniform_real_distribution<double> lr(std::log(1e-6), std::log(1e6));
    std::uniform_real_distribution<double> la(std::log(1e-4), 0.0);
    const int qs[3] = {1, 2, 4};
    bool ok = true;
    for (int i = 0; i < 10000; ++i) {
      const double rho = std::exp(lr(rng));
      const double alpha = std::exp(la(rng));
      const int q = qs[i % 3];
      const auto sw = relkin::daubechies_G_sandwich(rho, alpha, q);
      if (!(sw.lower <= sw.value * (1.0 + 1e-12) &&
            sw.value <= sw.upper * (1.0 + 1e-12)))
        ok = false;
    }
    expect(ok, "G_alpha sandwich on 10^4 samples");
  }
  {
    std::uniform_real_distribution<double> ls(std::log(1e-2), std::log(50.0));
    std::uniform_real_distribution<double> la(std::log(1e-3), 0.0);
    bool ok = true;
    for (int i = 0; i < 1000; ++i) {
      const double s = std::exp(ls(rng));
      const double alpha = std::exp(la(rng));
      const double F = relkin::lt_F(s, alpha);
      if (!(F <= relkin::lt_F_bound(s, alpha) * (1.0 + 1e-10))) ok = false;
    }
    expect(ok, "F(s) upper bound on 10^3 samples");
  }
  {
    const double m2 = relkin::bessel_K2_moment2();
    expect(std::abs(m2 - 1.5 * constants::pi) < 1e-8,
           "int t^2 K2(t) dt = 3 pi/2");
    bool ok = true;
    double prev = 1e300;
    for (int i = 0; i < 50; ++i) {
      const double t = 0.1 * std::pow(1000.0, i / 49.0);
      const double k2 = relkin::bessel_K2(t);
      if (k2 > 16.0 / (t * t) * std::exp(-0.5 * t) || k2 > prev) ok = false;
      prev = k2;
    }
    expect(ok, "K2 decreasing and below 16 t^-2 e^{-t/2}");
  }
  std::printf("%s\n", failures == 0 ? "all property suites passed"
                                    : "property suite FAILURES");
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  pin_blas_threads();
  CLI::App app{"atomscope: pseudo-relativistic TF/HF atomic experiments"};
  app.set_config("--config", "", "key=value config file overriding flags");
  app.require_subcommand(1);

  double Z = 2.0, N = -1.0, kappa = 0.0, rmax = 40.0;
  double cut = 1.0, nout = -1.0;
  int q = 2, grid_n = 1500;
  std::string scheme = "uniform", out_dir = "out", format = "csv,json";
  std::string experiment = "ionization", z_list = "2,3,4,5,6,7,8,9,10";
  unsigned seed = 12345;

  auto add_common = [&](CLI::App* c) {
    c->add_option("--Z", Z, "nuclear charge");
    c->add_option("--N", N, "electron number (default: N = Z)");
    c->add_option("--q", q, "spin-state count");
    c->add_option("--kappa", kappa, "coupling Z*alpha (alpha derived)");
    c->add_option("--grid-n", grid_n, "grid points");
    c->add_option("--rmax", rmax, "box radius");
    c->add_option("--scheme", scheme, "grid scheme: uniform | log");
    c->add_option("--out", out_dir, "output directory");
    c->add_option("--format", format, "emit formats: csv,json");
    c->add_option("--seed", seed, "seed for randomized suites");
  };

  auto* tf_cmd = app.add_subcommand("tf", "solve a Thomas-Fermi atom");
  add_common(tf_cmd);
  auto* hf_cmd = app.add_subcommand("hf", "solve a Hartree-Fock atom");
  add_common(hf_cmd);
  auto* otf_cmd =
      app.add_subcommand("otf", "outside-TF solve from a TF screened potential");
  add_common(otf_cmd);
  otf_cmd->add_option("--cut", cut, "cut radius r");
  otf_cmd->add_option("--nout", nout, "outer electron budget");
  auto* scan_cmd = app.add_subcommand("scan", "run a theorem-level experiment");
  add_common(scan_cmd);
  scan_cmd->add_option("--experiment", experiment,
                       "ionization | radius | potential | ionization-energy");
  scan_cmd->add_option("--Z-list", z_list, "comma-separated Z values");
  auto* check_cmd =
      app.add_subcommand("check", "run the randomized property suites");
  check_cmd->add_option("--seed", seed, "random seed");

  CLI11_PARSE(app, argc, argv);

  using namespace atomscope;
  const auto grid_scheme = scheme == "log" ? radial::GridScheme::log_uniform
                                           : radial::GridScheme::uniform;
  try {
    if (tf_cmd->parsed()) {
      if (N < 0.0) N = Z;
      auto grid = radial::make_grid(rmax, grid_n, grid_scheme);
      auto sol = thomasfermi::solve_tf_atom(Z, N, q, grid);
      thomasfermi::export_solution(sol, out_dir + "/tf.csv",
                                   out_dir + "/tf.json");
      std::printf("TF Z=%g N=%g q=%d: energy=%.8g mu=%.6g charge=%.8g "
                  "residual=%.2e\n",
                  Z, N, q, sol.energy, sol.mu, sol.total_charge, sol.residual);
      return 0;
    }
    if (hf_cmd->parsed()) {
      if (N < 0.0) N = Z;
      const double alpha = kappa > 0.0 ? kappa / Z : 1e-6;
      auto grid = radial::make_grid(rmax, grid_n, radial::GridScheme::uniform);
      auto sol = hartreefock::scf_solve(Z, N, alpha, q, grid);
      hartreefock::export_solution(sol, out_dir + "/hf.json",
                                   out_dir + "/hf_rho.csv",
                                   out_dir + "/hf_shell");
      std::printf("HF Z=%g N=%g alpha=%g: total=%.8g converged=%d iters=%d "
                  "residual=%.2e%s\n",
                  Z, N, alpha, sol.energy.total, sol.converged,
                  sol.iterations, sol.el_residual,
                  sol.unbound_last ? " [unbinding]" : "");
      return sol.converged ? 0 : 2;
    }
    if (otf_cmd->parsed()) {
      if (N < 0.0) N = Z;
      auto grid = radial::make_grid(rmax, grid_n, grid_scheme);
      auto tfs = thomasfermi::solve_tf_atom(Z, N, q, grid);
      thomasfermi::OTFInput in;
      in.cut = cut;
      in.q = q;
      double outer = 0.0;
      for (int i = 0; i < grid->n(); ++i) {
        const double x = grid->r[i];
        if (x < cut) continue;
        in.r.push_back(x);
        in.v.push_back(radial::screened_potential(tfs.rho, Z, cut, x));
      }
      outer = tfs.total_charge - radial::cumulative_charge(tfs.rho, cut);
      in.N_out = nout >= 0.0 ? nout : outer;
      auto sol = thomasfermi::solve_otf(in, grid);
      radial::write_csv(sol.rho, out_dir + "/otf_rho.csv");
      radial::write_csv(sol.phi, out_dir + "/otf_phi.csv");
      std::printf("OTF cut=%g Nout=%g: mu=%.6g sweeps=%d residual=%.2e\n",
                  cut, in.N_out, sol.mu, sol.sweeps, sol.residual);
      return 0;
    }
    if (scan_cmd->parsed()) {
      experiments::ExperimentConfig cfg;
      cfg.kind = experiment;
      cfg.Zs = parse_list(z_list);
      cfg.q = q;
      cfg.kappa = kappa > 0.0 ? kappa : 0.1;
      cfg.grid_n = grid_n;
      cfg.r_max = rmax;
      cfg.scheme = grid_scheme;
      cfg.out_dir = out_dir;
      cfg.seed = seed;
      report::ScanReport rep;
      if (experiment == "ionization")
        rep = experiments::run_ionization_scan(cfg);
      else if (experiment == "radius")
        rep = experiments::run_radius_scan(cfg);
      else if (experiment == "potential")
        rep = experiments::run_potential_comparison(cfg);
      else if (experiment == "ionization-energy")
        rep = experiments::run_ionization_energy(cfg);
      else
        throw param_error("unknown experiment: " + experiment);
      const bool want_csv = format.find("csv") != std::string::npos;
      const bool want_json = format.find("json") != std::string::npos;
      report::emit_report(rep, want_csv, want_json, out_dir);
      int passed = 0, failed = 0, info = 0;
      for (const auto& r : rep.rows) {
        if (r.flag == report::Flag::pass) ++passed;
        else if (r.flag == report::Flag::fail) ++failed;
        else ++info;
      }
      std::printf("%s: %d pass, %d fail, %d report-only -> %s\n",
                  rep.experiment.c_str(), passed, failed, info,
                  (out_dir + "/" + rep.experiment + ".csv").c_str());
      return rep.all_asserted_pass() ? 0 : 1;
    }
    if (check_cmd->parsed()) return run_property_suites(seed);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
  return 0;
}

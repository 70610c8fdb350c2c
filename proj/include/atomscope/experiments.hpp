#pragma once

#include <map>
#include <string>
#include <vector>

#include "atomscope/radial.hpp"
#include "atomscope/report.hpp"

// Theorem-level experiments: maximal excess charge, radius asymptotics,
// screened/mean-field potential comparisons, ionization energies.  Scan
// points are independent deterministic solves executed in a worker pool
// capped by ATOMSCOPE_THREADS; assembly is single-threaded in input order.

namespace atomscope::experiments {

struct ExperimentConfig {
  std::string kind;          // ionization | radius | potential | ionization-energy
  std::vector<double> Zs;
  std::string n_policy = "neutral";  // neutral | scan | explicit
  std::vector<double> Ns;            // used when n_policy == explicit
  int q = 2;
  double kappa = 0.1;        // alpha = kappa / Z per scan point
  int grid_n = 900;
  double r_max = 45.0;
  radial::GridScheme scheme = radial::GridScheme::uniform;
  std::vector<double> nus = {1.0, 2.0, 4.0, 8.0};  // radius scan
  std::string out_dir = "out";
  unsigned seed = 12345;
  int threads = 0;           // 0: use ATOMSCOPE_THREADS or all

  void validate() const;
  std::map<std::string, std::string> as_kv() const;
};

int resolve_threads(int requested);

report::ScanReport run_ionization_scan(const ExperimentConfig& cfg);
report::ScanReport run_radius_scan(const ExperimentConfig& cfg);
report::ScanReport run_potential_comparison(const ExperimentConfig& cfg);
report::ScanReport run_ionization_energy(const ExperimentConfig& cfg);

// Minimax fit of s(x) <= C_phi x^{-4+eps} + C_M over an eps lattice;
// returns the (C_phi, eps, C_M) with the smallest covering envelope.
struct PotentialFit {
  double C_phi = 0.0, eps = 0.0, C_M = 0.0;
};
PotentialFit fit_potential_envelope(const std::vector<double>& x,
                                    const std::vector<double>& s);

}  // namespace atomscope::experiments

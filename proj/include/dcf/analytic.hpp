#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "dcf/backoff.hpp"
#include "dcf/phy.hpp"

namespace dcf {

// Saturated mean-value reconstruction used as a coarse sanity band for the
// simulator. It is not the model the original throughput/delay figures came
// from; every CLI surface labels its output "reconstructed".
struct StageProfile {
  std::vector<int> cw_by_stage;       // from stage_cw_table
  std::vector<double> r_by_stage;     // 1 / cw per stage

  static StageProfile from_strategy(StrategyKind kind, const BackoffParams& params);
  static StageProfile from_windows(std::vector<int> windows);

  void validate() const;
};

struct Equilibrium {
  double tau = 0.0;     // per-slot transmission probability of one station
  double p_coll = 0.0;  // conditional collision probability per attempt
  int iterations = 0;
  double residual = 0.0;
  bool converged = false;
};

// Per-state transmission probability 1 / CW.
double r_light(int cw);

// Closed-form heavy-regime probability 1 / (2^stage * cw_min + 2).
double r_heavy(int stage, int cw_min);

// Damped fixed point of tau = f(p), p = 1 - (1 - tau)^(n-1), where f is the
// slot-occupancy-weighted mean of r_by_stage over the truncated geometric
// stage chain. Non-convergence is reported, not thrown: the last iterate and
// residual come back with converged = false.
Equilibrium solve_equilibrium(const StageProfile& profile, int n_stations,
                              double tolerance = 1e-9, int max_iter = 10'000);

// Exposes f for oracle-style tests (bisection on the composed map).
double equilibrium_tau_of_p(const StageProfile& profile, double p);

// Slot-time decomposition throughput at the given equilibrium, in [0, 1].
double analytic_saturation_throughput(const Equilibrium& eq, int n_stations,
                                      const PhyParams& phy);

// Gap between the closed-form heavy-regime window 2^i*cw_min + 2 and the
// recursive trajectory, per stage above the threshold: (stage, |r delta|).
std::vector<std::pair<int, double>> heavy_rule_gap(const BackoffParams& params);

}  // namespace dcf

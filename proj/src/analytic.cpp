#include "dcf/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace dcf {

StageProfile StageProfile::from_strategy(StrategyKind kind,
                                         const BackoffParams& params) {
  return from_windows(stage_cw_table(kind, params));
}

StageProfile StageProfile::from_windows(std::vector<int> windows) {
  StageProfile profile;
  profile.cw_by_stage = std::move(windows);
  profile.r_by_stage.reserve(profile.cw_by_stage.size());
  for (int cw : profile.cw_by_stage) profile.r_by_stage.push_back(r_light(cw));
  profile.validate();
  return profile;
}

void StageProfile::validate() const {
  if (cw_by_stage.empty() || cw_by_stage.size() != r_by_stage.size())
    throw std::invalid_argument("StageProfile: empty or mismatched stage lists");
  for (std::size_t i = 0; i < cw_by_stage.size(); ++i) {
    if (cw_by_stage[i] < 1)
      throw std::invalid_argument("StageProfile.cw_by_stage: windows must be >= 1");
    if (r_by_stage[i] <= 0.0 || r_by_stage[i] > 1.0)
      throw std::invalid_argument("StageProfile.r_by_stage: must lie in (0, 1]");
  }
}

double r_light(int cw) {
  if (cw < 1) throw std::domain_error("r_light: cw must be >= 1");
  return 1.0 / static_cast<double>(cw);
}

double r_heavy(int stage, int cw_min) {
  if (stage < 0 || cw_min < 1)
    throw std::domain_error("r_heavy: stage must be >= 0 and cw_min >= 1");
  return 1.0 / (std::ldexp(static_cast<double>(cw_min), stage) + 2.0);
}

// Mean per-slot transmission probability when the per-attempt failure
// probability is p. Stage i is occupied for about (CW_i + 1) / 2 slots per
// visit, so the geometric visit weights p^i are stretched by the stage's
// window before averaging r_by_stage.
double equilibrium_tau_of_p(const StageProfile& profile, double p) {
  double visit = 1.0;
  double weighted_r = 0.0;
  double weight = 0.0;
  for (std::size_t i = 0; i < profile.cw_by_stage.size(); ++i) {
    const double slots = (static_cast<double>(profile.cw_by_stage[i]) + 1.0) / 2.0;
    weighted_r += visit * slots * profile.r_by_stage[i];
    weight += visit * slots;
    visit *= p;
  }
  return weighted_r / weight;
}

Equilibrium solve_equilibrium(const StageProfile& profile, int n_stations,
                              double tolerance, int max_iter) {
  profile.validate();
  if (n_stations < 1)
    throw std::invalid_argument("solve_equilibrium: n_stations must be >= 1");

  const double damping = 0.5;
  Equilibrium eq;
  double p = 0.0;
  for (int iter = 1; iter <= max_iter; ++iter) {
    const double tau = equilibrium_tau_of_p(profile, p);
    const double p_implied =
        1.0 - std::pow(1.0 - tau, static_cast<double>(n_stations - 1));
    eq.tau = tau;
    eq.p_coll = p;
    eq.iterations = iter;
    eq.residual = std::abs(p - p_implied);
    if (eq.residual <= tolerance) {
      eq.converged = true;
      return eq;
    }
    p = (1.0 - damping) * p + damping * p_implied;
    p = std::clamp(p, 0.0, 1.0);
  }
  eq.converged = false;
  return eq;
}

double analytic_saturation_throughput(const Equilibrium& eq, int n_stations,
                                      const PhyParams& phy) {
  if (!eq.converged)
    throw std::invalid_argument(
        "analytic_saturation_throughput: equilibrium did not converge");
  const double n = static_cast<double>(n_stations);
  const double tau = eq.tau;
  const double p_tr = 1.0 - std::pow(1.0 - tau, n);
  const double p_succ = n * tau * std::pow(1.0 - tau, n - 1.0);
  const double p_coll = p_tr - p_succ;
  const double p_idle = 1.0 - p_tr;
  if (p_tr <= 0.0) return 0.0;
  const double slot_time_us =
      p_idle * static_cast<double>(phy.slot_us) +
      p_succ * static_cast<double>(tx_time_success_us(phy)) +
      p_coll * static_cast<double>(tx_time_collision_us(phy));
  const double payload_us_equiv = static_cast<double>(phy.payload_bits) /
                                  (static_cast<double>(phy.channel_rate_bps) * 1e-6);
  return p_succ * payload_us_equiv / slot_time_us;
}

std::vector<std::pair<int, double>> heavy_rule_gap(const BackoffParams& params) {
  const auto table = stage_cw_table(StrategyKind::Dcbta, params);
  std::vector<std::pair<int, double>> gaps;
  for (std::size_t i = 0; i < table.size(); ++i) {
    const double ladder = std::ldexp(static_cast<double>(params.cw_min),
                                     static_cast<int>(i));
    if (ladder > static_cast<double>(params.cw_threshold)) {
      const double gap =
          std::abs(r_heavy(static_cast<int>(i), params.cw_min) - r_light(table[i]));
      gaps.emplace_back(static_cast<int>(i), gap);
    }
  }
  return gaps;
}

}  // namespace dcf

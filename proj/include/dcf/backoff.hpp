#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "dcf/rng.hpp"

namespace dcf {

// Contention-window adaptation rules. Every strategy is a pure
// (on_collision, on_success) pair over BackoffState; the simulator never
// touches window arithmetic directly.
enum class StrategyKind { Beb, Mild, Lild, Eied, Didd, Elba, Dcbta };

inline constexpr StrategyKind kAllStrategies[] = {
    StrategyKind::Beb,  StrategyKind::Mild, StrategyKind::Lild,
    StrategyKind::Eied, StrategyKind::Didd, StrategyKind::Elba,
    StrategyKind::Dcbta};

std::string_view strategy_name(StrategyKind kind);
StrategyKind parse_strategy(std::string_view name);  // throws std::invalid_argument

struct BackoffParams {
  int cw_min = 8;
  int cw_max = 1024;
  int max_stage = 6;
  int cw_threshold = 512;

  // Default rule: threshold at half of cw_max.
  static BackoffParams with_default_threshold(int cw_min, int cw_max, int max_stage);

  void validate() const;  // throws std::invalid_argument naming the field
};

struct BackoffState {
  int cw = 8;
  int stage = 0;  // consecutive collisions since last success, capped

  bool operator==(const BackoffState&) const = default;
};

BackoffState on_collision(StrategyKind kind, const BackoffParams& params,
                          const BackoffState& state);
BackoffState on_success(StrategyKind kind, const BackoffParams& params,
                        const BackoffState& state);

// Uniform backoff counter in [0, cw - 1].
int sample_backoff(const BackoffState& state, Rng& rng);

// Collision-only window trajectory CW_0 .. CW_m (length max_stage + 1).
std::vector<int> stage_cw_table(StrategyKind kind, const BackoffParams& params);

}  // namespace dcf

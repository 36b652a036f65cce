#include "dcf/backoff.hpp"

#include <algorithm>
#include <stdexcept>

namespace dcf {

std::string_view strategy_name(StrategyKind kind) {
  switch (kind) {
    case StrategyKind::Beb: return "BEB";
    case StrategyKind::Mild: return "MILD";
    case StrategyKind::Lild: return "LILD";
    case StrategyKind::Eied: return "EIED";
    case StrategyKind::Didd: return "DIDD";
    case StrategyKind::Elba: return "ELBA";
    case StrategyKind::Dcbta: return "DCBTA";
  }
  throw std::invalid_argument("strategy_name: unknown StrategyKind");
}

StrategyKind parse_strategy(std::string_view name) {
  std::string upper(name);
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  for (StrategyKind kind : kAllStrategies) {
    if (upper == strategy_name(kind)) return kind;
  }
  throw std::invalid_argument("unknown strategy '" + std::string(name) +
                              "' (expected BEB|MILD|LILD|EIED|DIDD|ELBA|DCBTA)");
}

BackoffParams BackoffParams::with_default_threshold(int cw_min, int cw_max,
                                                    int max_stage) {
  BackoffParams p;
  p.cw_min = cw_min;
  p.cw_max = cw_max;
  p.max_stage = max_stage;
  p.cw_threshold = cw_max / 2;
  p.validate();
  return p;
}

void BackoffParams::validate() const {
  if (cw_min < 1) throw std::invalid_argument("BackoffParams.cw_min: must be >= 1");
  if (cw_threshold < cw_min)
    throw std::invalid_argument("BackoffParams.cw_threshold: must be >= cw_min");
  if (cw_max < cw_threshold)
    throw std::invalid_argument("BackoffParams.cw_max: must be >= cw_threshold");
  if (max_stage < 0)
    throw std::invalid_argument("BackoffParams.max_stage: must be >= 0");
}

namespace {

void check_state(const BackoffParams& params, const BackoffState& state) {
  if (state.cw < params.cw_min || state.cw > params.cw_max)
    throw std::invalid_argument("BackoffState.cw out of [cw_min, cw_max]");
  if (state.stage < 0 || state.stage > params.max_stage)
    throw std::invalid_argument("BackoffState.stage out of [0, max_stage]");
}

int clamp_cw(long long cw, const BackoffParams& p) {
  return static_cast<int>(std::clamp<long long>(cw, p.cw_min, p.cw_max));
}

}  // namespace

BackoffState on_collision(StrategyKind kind, const BackoffParams& params,
                          const BackoffState& state) {
  check_state(params, state);
  const long long cw = state.cw;
  long long next = cw;
  switch (kind) {
    case StrategyKind::Beb:
    case StrategyKind::Eied:
    case StrategyKind::Didd:
      next = 2 * cw;
      break;
    case StrategyKind::Mild:
      next = cw + cw / 2;  // floor(1.5 cw)
      break;
    case StrategyKind::Lild:
      next = cw + params.cw_min;
      break;
    case StrategyKind::Elba:
      next = cw < params.cw_threshold ? 2 * cw : cw + params.cw_min;
      break;
    case StrategyKind::Dcbta:
      // Light load at or below the threshold, heavy strictly above.
      next = cw <= params.cw_threshold ? 2 * cw : 2 * cw + 2;
      break;
  }
  return BackoffState{clamp_cw(next, params),
                      std::min(state.stage + 1, params.max_stage)};
}

BackoffState on_success(StrategyKind kind, const BackoffParams& params,
                        const BackoffState& state) {
  check_state(params, state);
  const long long cw = state.cw;
  long long next = cw;
  switch (kind) {
    case StrategyKind::Beb:
    case StrategyKind::Elba:
      next = params.cw_min;
      break;
    case StrategyKind::Mild:
      next = cw - 1;
      break;
    case StrategyKind::Lild:
      next = cw - params.cw_min;
      break;
    case StrategyKind::Eied:
    case StrategyKind::Didd:
      next = cw / 2;
      break;
    case StrategyKind::Dcbta:
      next = cw <= params.cw_threshold ? cw - 1 : cw - 2;
      break;
  }
  return BackoffState{clamp_cw(next, params), 0};
}

int sample_backoff(const BackoffState& state, Rng& rng) {
  return static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(state.cw)));
}

std::vector<int> stage_cw_table(StrategyKind kind, const BackoffParams& params) {
  params.validate();
  std::vector<int> table;
  table.reserve(static_cast<std::size_t>(params.max_stage) + 1);
  BackoffState state{params.cw_min, 0};
  table.push_back(state.cw);
  for (int i = 0; i < params.max_stage; ++i) {
    state = on_collision(kind, params, state);
    table.push_back(state.cw);
  }
  return table;
}

}  // namespace dcf

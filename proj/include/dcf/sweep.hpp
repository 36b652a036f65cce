#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dcf/sim.hpp"

namespace dcf {

// One experiment grid: the cross product of strategies x n x cw_min x load,
// each point replicated and aggregated into a ResultRow.
struct SweepSpec {
  std::vector<StrategyKind> strategies{StrategyKind::Beb};
  std::vector<int> n_values{50};
  std::vector<int> cw_min_values{8};
  std::vector<double> offered_loads{0.5};
  int replications = 5;
  std::uint64_t seed_base = 1;

  PhyParams phy;
  int cw_max = 1024;
  int max_stage = 6;
  std::optional<int> cw_threshold;  // defaults to cw_max / 2
  int queue_capacity = 1;
  std::int64_t sim_time_us = 100'000'000;
  std::int64_t warmup_us = 5'000'000;

  void validate() const;
  BackoffParams backoff_for(int cw_min) const;
  SimConfig config_for(StrategyKind strategy, int n, int cw_min, double load,
                       std::uint64_t seed) const;
};

struct ResultRow {
  std::string strategy;
  int n = 0;
  int cw_min = 0;
  int cw_max = 0;
  int m = 0;
  double offered_load = 0.0;
  double arrival_rate_pps = 0.0;
  double throughput_mean = 0.0;
  double throughput_ci95 = 0.0;
  double delay_mean_us = 0.0;
  double delay_ci95_us = 0.0;
  double collision_rate = 0.0;
  std::uint64_t seed_base = 0;
  int replications = 0;
};

enum class ExecMode { Serial, Parallel };

// Replication r of a grid point runs with seed_base + stable_point_hash(...).
std::uint64_t stable_point_hash(std::string_view strategy, int n, int cw_min,
                                double load, int replication);

std::vector<ResultRow> run_sweep(const SweepSpec& spec,
                                 ExecMode mode = ExecMode::Parallel);

// Config files are flat key = value lines; unknown keys are errors.
SweepSpec load_config(const std::string& path);
SweepSpec parse_config_text(const std::string& text, const std::string& origin);

std::vector<std::string> preset_names();
SweepSpec make_preset(const std::string& name);

void emit_csv(const std::vector<ResultRow>& rows, std::ostream& out);
void emit_json(const std::vector<ResultRow>& rows, std::ostream& out);
// format is "csv" or "json"; destination "-" writes to stdout.
void emit(const std::vector<ResultRow>& rows, const std::string& format,
          const std::string& destination);

}  // namespace dcf

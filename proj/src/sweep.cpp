#include "dcf/sweep.hpp"

#include <cmath>
#include <cstring>
#include <stdexcept>

namespace dcf {

void SweepSpec::validate() const {
  if (strategies.empty()) throw std::invalid_argument("SweepSpec.strategies: empty");
  if (n_values.empty()) throw std::invalid_argument("SweepSpec.n_values: empty");
  if (cw_min_values.empty())
    throw std::invalid_argument("SweepSpec.cw_min_values: empty");
  if (offered_loads.empty())
    throw std::invalid_argument("SweepSpec.offered_loads: empty");
  for (double load : offered_loads)
    if (load < 0) throw std::invalid_argument("SweepSpec.offered_loads: must be >= 0");
  if (replications < 1)
    throw std::invalid_argument("SweepSpec.replications: must be >= 1");
  phy.validate();
  for (int n : n_values)
    if (n < 1) throw std::invalid_argument("SweepSpec.n_values: must be >= 1");
  for (int cw_min : cw_min_values) backoff_for(cw_min).validate();
  if (warmup_us < 0) throw std::invalid_argument("SweepSpec.warmup_us: must be >= 0");
  if (sim_time_us <= warmup_us)
    throw std::invalid_argument("SweepSpec.sim_time_us: must be > warmup_us");
  if (queue_capacity < 1)
    throw std::invalid_argument("SweepSpec.queue_capacity: must be >= 1");
}

BackoffParams SweepSpec::backoff_for(int cw_min) const {
  if (cw_threshold.has_value()) {
    BackoffParams p;
    p.cw_min = cw_min;
    p.cw_max = cw_max;
    p.max_stage = max_stage;
    p.cw_threshold = *cw_threshold;
    p.validate();
    return p;
  }
  return BackoffParams::with_default_threshold(cw_min, cw_max, max_stage);
}

SimConfig SweepSpec::config_for(StrategyKind strategy, int n, int cw_min,
                                double load, std::uint64_t seed) const {
  SimConfig cfg;
  cfg.n_stations = n;
  cfg.strategy = strategy;
  cfg.backoff = backoff_for(cw_min);
  cfg.phy = phy;
  cfg.traffic.arrival_rate_pps = SimConfig::arrival_rate_for_load(load, n, phy);
  cfg.traffic.queue_capacity = queue_capacity;
  cfg.sim_time_us = sim_time_us;
  cfg.warmup_us = warmup_us;
  cfg.seed = seed;
  return cfg;
}

std::uint64_t stable_point_hash(std::string_view strategy, int n, int cw_min,
                                double load, int replication) {
  // FNV-1a over a fixed-layout encoding; std::hash is not stable across
  // implementations and seeds must survive rebuilds.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix_byte = [&h](unsigned char b) {
    h ^= b;
    h *= 0x100000001b3ULL;
  };
  auto mix_u64 = [&](std::uint64_t v) {
    for (int i = 0; i < 8; ++i) mix_byte(static_cast<unsigned char>(v >> (8 * i)));
  };
  for (char c : strategy) mix_byte(static_cast<unsigned char>(c));
  mix_u64(static_cast<std::uint64_t>(n));
  mix_u64(static_cast<std::uint64_t>(cw_min));
  std::uint64_t load_bits = 0;
  static_assert(sizeof(double) == sizeof(std::uint64_t));
  std::memcpy(&load_bits, &load, sizeof(load_bits));
  mix_u64(load_bits);
  mix_u64(static_cast<std::uint64_t>(replication));
  return h;
}

namespace {

struct GridPoint {
  StrategyKind strategy;
  int n;
  int cw_min;
  double load;
};

struct Aggregate {
  double mean = 0.0;
  double ci95 = 0.0;
};

Aggregate aggregate(const std::vector<double>& values) {
  Aggregate a;
  if (values.empty()) {
    a.mean = std::nan("");
    return a;
  }
  double sum = 0.0;
  for (double v : values) sum += v;
  a.mean = sum / static_cast<double>(values.size());
  if (values.size() >= 2) {
    double ss = 0.0;
    for (double v : values) ss += (v - a.mean) * (v - a.mean);
    const double sd = std::sqrt(ss / static_cast<double>(values.size() - 1));
    a.ci95 = 1.96 * sd / std::sqrt(static_cast<double>(values.size()));
  }
  return a;
}

}  // namespace

std::vector<ResultRow> run_sweep(const SweepSpec& spec, ExecMode mode) {
  spec.validate();

  std::vector<GridPoint> grid;
  for (StrategyKind strategy : spec.strategies)
    for (int n : spec.n_values)
      for (int cw_min : spec.cw_min_values)
        for (double load : spec.offered_loads)
          grid.push_back(GridPoint{strategy, n, cw_min, load});

  const int reps = spec.replications;
  const std::size_t n_runs = grid.size() * static_cast<std::size_t>(reps);
  std::vector<RunMetrics> results(n_runs);
  std::vector<std::string> errors(n_runs);

  auto execute = [&](std::size_t task) {
    const GridPoint& pt = grid[task / static_cast<std::size_t>(reps)];
    const int rep = static_cast<int>(task % static_cast<std::size_t>(reps));
    const std::uint64_t seed =
        spec.seed_base +
        stable_point_hash(strategy_name(pt.strategy), pt.n, pt.cw_min, pt.load, rep);
    try {
      results[task] =
          run(spec.config_for(pt.strategy, pt.n, pt.cw_min, pt.load, seed));
    } catch (const std::exception& e) {
      errors[task] = e.what();
    }
  };

  if (mode == ExecMode::Parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long long task = 0; task < static_cast<long long>(n_runs); ++task)
      execute(static_cast<std::size_t>(task));
  } else {
    for (std::size_t task = 0; task < n_runs; ++task) execute(task);
  }

  for (std::size_t task = 0; task < n_runs; ++task) {
    if (!errors[task].empty()) {
      const GridPoint& pt = grid[task / static_cast<std::size_t>(reps)];
      throw std::runtime_error(
          "sweep aborted at strategy=" + std::string(strategy_name(pt.strategy)) +
          " n=" + std::to_string(pt.n) + " cw_min=" + std::to_string(pt.cw_min) +
          " load=" + std::to_string(pt.load) +
          " rep=" + std::to_string(task % static_cast<std::size_t>(reps)) + ": " +
          errors[task]);
    }
  }

  // Aggregation runs serially in grid order so output is identical no matter
  // how the runs were scheduled.
  std::vector<ResultRow> rows;
  rows.reserve(grid.size());
  for (std::size_t g = 0; g < grid.size(); ++g) {
    const GridPoint& pt = grid[g];
    std::vector<double> throughputs, delays, collision_rates;
    throughputs.reserve(static_cast<std::size_t>(reps));
    for (int rep = 0; rep < reps; ++rep) {
      const RunMetrics& m = results[g * static_cast<std::size_t>(reps) +
                                    static_cast<std::size_t>(rep)];
      throughputs.push_back(m.normalized_throughput);
      collision_rates.push_back(m.collision_rate);
      if (m.avg_tx_delay_us.has_value()) delays.push_back(*m.avg_tx_delay_us);
    }
    const Aggregate thr = aggregate(throughputs);
    const Aggregate del = aggregate(delays);
    const Aggregate col = aggregate(collision_rates);

    ResultRow row;
    row.strategy = std::string(strategy_name(pt.strategy));
    row.n = pt.n;
    row.cw_min = pt.cw_min;
    row.cw_max = spec.cw_max;
    row.m = spec.max_stage;
    row.offered_load = pt.load;
    row.arrival_rate_pps = SimConfig::arrival_rate_for_load(pt.load, pt.n, spec.phy);
    row.throughput_mean = thr.mean;
    row.throughput_ci95 = thr.ci95;
    row.delay_mean_us = del.mean;
    row.delay_ci95_us = del.ci95;
    row.collision_rate = col.mean;
    row.seed_base = spec.seed_base;
    row.replications = reps;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace dcf

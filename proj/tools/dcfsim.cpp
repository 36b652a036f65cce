// dcfsim: slotted 802.11 DCF simulator with pluggable backoff strategies.
// Subcommands: simulate (one run, JSON), sweep (grid -> csv/json),
// analytic (reconstructed fixed-point model), presets.

#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "dcf/analytic.hpp"
#include "dcf/sim.hpp"
#include "dcf/sweep.hpp"

namespace {

nlohmann::json metrics_to_json(const dcf::RunMetrics& m) {
  nlohmann::json j{
      {"normalized_throughput", m.normalized_throughput},
      {"collision_rate", m.collision_rate},
      {"offered_load", m.offered_load},
      {"span_us", m.span_us},
      {"delivered_bits", m.delivered_bits},
      {"attempts", m.attempts},
      {"arrivals", m.arrivals},
      {"deliveries", m.deliveries},
      {"drops", m.drops},
      {"backlog_at_end", m.backlog_at_end},
      {"ledger",
       {{"total_tx_time_us", m.ledger.total_tx_time_us},
        {"total_collision_time_us", m.ledger.total_collision_time_us},
        {"total_backoff_time_us", m.ledger.total_backoff_time_us},
        {"total_empty_slot_time_us", m.ledger.total_empty_slot_time_us},
        {"n_transmissions", m.ledger.n_transmissions},
        {"n_collisions", m.ledger.n_collisions},
        {"total_delay_us", dcf::total_delay_us(m.ledger)}}}};
  j["avg_transmission_delay_us"] =
      m.avg_tx_delay_us ? nlohmann::json(*m.avg_tx_delay_us) : nlohmann::json();
  j["avg_queueing_delay_us"] = m.avg_queueing_delay_us
                                   ? nlohmann::json(*m.avg_queueing_delay_us)
                                   : nlohmann::json();
  if (!m.delay_samples_us.empty()) j["delay_samples_us"] = m.delay_samples_us;
  return j;
}

struct BackoffCliOpts {
  int cw_min = 8;
  int cw_max = 1024;
  int max_stage = 6;
  int cw_threshold = -1;  // -1: cw_max / 2

  dcf::BackoffParams resolve() const {
    if (cw_threshold < 0)
      return dcf::BackoffParams::with_default_threshold(cw_min, cw_max, max_stage);
    dcf::BackoffParams p;
    p.cw_min = cw_min;
    p.cw_max = cw_max;
    p.max_stage = max_stage;
    p.cw_threshold = cw_threshold;
    p.validate();
    return p;
  }
};

void add_backoff_options(CLI::App* cmd, BackoffCliOpts& opts) {
  cmd->add_option("--cw-min", opts.cw_min, "Minimum contention window");
  cmd->add_option("--cw-max", opts.cw_max, "Maximum contention window");
  cmd->add_option("--m", opts.max_stage, "Maximum backoff stage");
  cmd->add_option("--cw-threshold", opts.cw_threshold,
                  "Light/heavy regime boundary (default cw_max/2)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Slotted IEEE 802.11 DCF backoff-strategy simulator"};
  app.require_subcommand(1);

  // simulate
  auto* simulate = app.add_subcommand("simulate", "Run one experiment, JSON to stdout");
  std::string sim_strategy = "BEB";
  int sim_n = 50;
  double sim_load = 0.5;
  double sim_rate = -1.0;
  double sim_time_s = 100.0;
  double warmup_s = 5.0;
  std::uint64_t sim_seed = 1;
  int queue_capacity = 1;
  bool retain_delays = false;
  BackoffCliOpts sim_backoff;
  simulate->add_option("--strategy", sim_strategy,
                       "BEB|MILD|LILD|EIED|DIDD|ELBA|DCBTA");
  simulate->add_option("--n", sim_n, "Number of stations");
  simulate->add_option("--offered-load", sim_load, "Normalized offered load");
  simulate->add_option("--arrival-rate", sim_rate,
                       "Per-station Poisson rate in packets/s (overrides load)");
  simulate->add_option("--sim-time-s", sim_time_s, "Simulated span in seconds");
  simulate->add_option("--warmup-s", warmup_s, "Warmup excluded from statistics");
  simulate->add_option("--seed", sim_seed, "RNG seed");
  simulate->add_option("--queue-capacity", queue_capacity, "Per-station buffer");
  simulate->add_flag("--retain-delays", retain_delays,
                     "Include per-packet delay samples in the output");
  add_backoff_options(simulate, sim_backoff);

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Run an experiment grid");
  std::string config_path, preset_name, out_path = "-", format = "csv";
  int threads = 0;
  bool serial = false;
  sweep->add_option("--config", config_path, "Flat key=value config file");
  sweep->add_option("--preset", preset_name, "fig2|fig3|fig4|fig5|fig6");
  sweep->add_option("--out", out_path, "Output path ('-' for stdout)");
  sweep->add_option("--format", format, "csv|json");
  sweep->add_option("--threads", threads, "OpenMP threads (0 = runtime default)");
  sweep->add_flag("--serial", serial, "Force the serial execution path");

  // analytic
  auto* analytic =
      app.add_subcommand("analytic", "Reconstructed fixed-point model (not a "
                                     "reproduction of the original analysis)");
  std::string ana_strategy = "BEB";
  int ana_n = 50;
  double tolerance = 1e-9;
  int max_iter = 10'000;
  BackoffCliOpts ana_backoff;
  analytic->add_option("--strategy", ana_strategy, "Strategy whose stage table to use");
  analytic->add_option("--n", ana_n, "Number of saturated stations");
  analytic->add_option("--tolerance", tolerance, "Fixed-point residual target");
  analytic->add_option("--max-iter", max_iter, "Iteration cap");
  add_backoff_options(analytic, ana_backoff);

  auto* presets = app.add_subcommand("presets", "List experiment presets");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (simulate->parsed()) {
      dcf::SimConfig cfg;
      cfg.strategy = dcf::parse_strategy(sim_strategy);
      cfg.n_stations = sim_n;
      cfg.backoff = sim_backoff.resolve();
      cfg.traffic.arrival_rate_pps =
          sim_rate >= 0.0
              ? sim_rate
              : dcf::SimConfig::arrival_rate_for_load(sim_load, sim_n, cfg.phy);
      cfg.traffic.queue_capacity = queue_capacity;
      cfg.sim_time_us = static_cast<std::int64_t>(sim_time_s * 1e6);
      cfg.warmup_us = static_cast<std::int64_t>(warmup_s * 1e6);
      cfg.seed = sim_seed;
      cfg.retain_delay_samples = retain_delays;
      cfg.validate();

      const dcf::RunMetrics m = dcf::run(cfg);
      nlohmann::json out{{"strategy", dcf::strategy_name(cfg.strategy)},
                         {"n_stations", cfg.n_stations},
                         {"arrival_rate_pps", cfg.traffic.arrival_rate_pps},
                         {"seed", cfg.seed},
                         {"sim_time_us", cfg.sim_time_us},
                         {"warmup_us", cfg.warmup_us},
                         {"metrics", metrics_to_json(m)}};
      std::cout << out.dump(2) << '\n';
    } else if (sweep->parsed()) {
      dcf::SweepSpec spec;
      if (!preset_name.empty()) spec = dcf::make_preset(preset_name);
      if (!config_path.empty()) {
        // The file can itself name a preset; CLI --preset is just a shortcut
        // for an empty file containing that line.
        spec = dcf::load_config(config_path);
      }
      spec.validate();
#ifdef _OPENMP
      if (threads > 0) omp_set_num_threads(threads);
#endif
      const auto rows = dcf::run_sweep(
          spec, serial ? dcf::ExecMode::Serial : dcf::ExecMode::Parallel);
      dcf::emit(rows, format, out_path);
    } else if (analytic->parsed()) {
      const dcf::StrategyKind kind = dcf::parse_strategy(ana_strategy);
      const dcf::BackoffParams params = ana_backoff.resolve();
      const auto profile = dcf::StageProfile::from_strategy(kind, params);
      const auto eq = dcf::solve_equilibrium(profile, ana_n, tolerance, max_iter);
      nlohmann::json out{
          {"label", "reconstructed"},
          {"model", "saturated slot-weighted mean-value fixed point"},
          {"strategy", dcf::strategy_name(kind)},
          {"n", ana_n},
          {"cw_by_stage", profile.cw_by_stage},
          {"tau", eq.tau},
          {"p_coll", eq.p_coll},
          {"iterations", eq.iterations},
          {"residual", eq.residual},
          {"converged", eq.converged}};
      if (eq.converged) {
        dcf::PhyParams phy;
        out["saturation_throughput"] =
            dcf::analytic_saturation_throughput(eq, ana_n, phy);
      }
      nlohmann::json gaps = nlohmann::json::array();
      for (const auto& [stage, gap] : dcf::heavy_rule_gap(params))
        gaps.push_back({{"stage", stage}, {"r_gap", gap}});
      out["heavy_rule_gap"] = gaps;
      std::cout << out.dump(2) << '\n';
    } else if (presets->parsed()) {
      for (const auto& name : dcf::preset_names()) {
        const dcf::SweepSpec spec = dcf::make_preset(name);
        std::cout << name << ": strategies=";
        for (std::size_t i = 0; i < spec.strategies.size(); ++i)
          std::cout << (i ? "," : "") << dcf::strategy_name(spec.strategies[i]);
        std::cout << " n=";
        for (std::size_t i = 0; i < spec.n_values.size(); ++i)
          std::cout << (i ? "," : "") << spec.n_values[i];
        std::cout << " cw_min=";
        for (std::size_t i = 0; i < spec.cw_min_values.size(); ++i)
          std::cout << (i ? "," : "") << spec.cw_min_values[i];
        std::cout << " m=" << spec.max_stage << " loads=" << spec.offered_loads.front()
                  << ".." << spec.offered_loads.back() << " step 0.05"
                  << " replications=" << spec.replications << '\n';
      }
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    // Config/usage problems exit 1; failures while running exit 2.
    const std::string what = e.what();
    const bool usage = what.find("config") != std::string::npos ||
                       what.find("unknown") != std::string::npos ||
                       what.find("expected") != std::string::npos;
    return usage ? 1 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

#include <doctest.h>

#include <cmath>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "dcf/sweep.hpp"

using namespace dcf;

namespace {

// Small, fast grid for structural tests.
SweepSpec tiny_spec() {
  SweepSpec spec;
  spec.strategies = {StrategyKind::Beb};
  spec.n_values = {3};
  spec.cw_min_values = {8};
  spec.offered_loads = {0.2, 0.6, 1.0};
  spec.replications = 2;
  spec.seed_base = 7;
  spec.sim_time_us = 2'000'000;
  spec.warmup_us = 200'000;
  return spec;
}

std::string as_csv(const std::vector<ResultRow>& rows) {
  std::ostringstream out;
  emit_csv(rows, out);
  return out.str();
}

}  // namespace

TEST_CASE("empty config falls back to documented defaults") {
  const SweepSpec spec = parse_config_text("", "<empty>");
  CHECK(spec.strategies == std::vector<StrategyKind>{StrategyKind::Beb});
  CHECK(spec.n_values == std::vector<int>{50});
  CHECK(spec.cw_min_values == std::vector<int>{8});
  CHECK(spec.offered_loads == std::vector<double>{0.5});
  CHECK(spec.replications == 5);
  CHECK(spec.phy.payload_bits == 8184);
  CHECK(spec.phy.data_us == 8200);
  CHECK(spec.phy.channel_rate_bps == 1'000'000);
  CHECK(spec.phy.slot_us == 50);
  CHECK(spec.phy.difs_us == 128);
  CHECK(spec.phy.sifs_us == 28);
  CHECK(spec.phy.rts_us == 350);
  CHECK(spec.phy.cts_us == 350);
  CHECK(spec.cw_max == 1024);
  CHECK(spec.max_stage == 6);
}

TEST_CASE("presets mirror their figure captions") {
  const SweepSpec fig2 = make_preset("fig2");
  CHECK(fig2.strategies == std::vector<StrategyKind>{StrategyKind::Beb,
                                                     StrategyKind::Elba,
                                                     StrategyKind::Dcbta});
  CHECK(fig2.n_values == std::vector<int>{50});
  CHECK(fig2.cw_min_values == std::vector<int>{8});
  CHECK(fig2.max_stage == 6);
  REQUIRE(fig2.offered_loads.size() == 24);
  CHECK(fig2.offered_loads.front() == doctest::Approx(0.05));
  CHECK(fig2.offered_loads.back() == doctest::Approx(1.20));

  const SweepSpec fig3 = make_preset("fig3");
  CHECK(fig3.cw_min_values == std::vector<int>{8, 16, 32});
  CHECK(fig3.n_values == std::vector<int>{50});

  CHECK(make_preset("fig4").n_values == std::vector<int>{100});
  CHECK(make_preset("fig4").cw_min_values == std::vector<int>{32});
  CHECK(make_preset("fig5").cw_min_values == std::vector<int>{64});
  CHECK(make_preset("fig6").cw_min_values == std::vector<int>{128});
  CHECK_THROWS(make_preset("fig7"));
}

TEST_CASE("config text: preset base plus overrides") {
  const SweepSpec spec = parse_config_text(
      "preset = fig2\nreplications = 3\nseed_base = 99\n# comment\n"
      "offered_loads = 0.9, 1.0\n",
      "<test>");
  CHECK(spec.strategies.size() == 3);
  CHECK(spec.replications == 3);
  CHECK(spec.seed_base == 99);
  CHECK(spec.offered_loads == std::vector<double>{0.9, 1.0});
}

TEST_CASE("config errors carry position and field diagnostics") {
  CHECK_THROWS_WITH_AS(parse_config_text("bogus_key = 1\n", "<t>"),
                       doctest::Contains("unknown key 'bogus_key'"),
                       std::runtime_error);
  CHECK_THROWS_WITH_AS(parse_config_text("n = fifty\n", "<t>"),
                       doctest::Contains("expected integer"), std::runtime_error);
  CHECK_THROWS_WITH_AS(parse_config_text("just a line\n", "<t>"),
                       doctest::Contains("<t>:1"), std::runtime_error);
  CHECK_THROWS_WITH_AS(parse_config_text("replications = 0\n", "<t>"),
                       doctest::Contains("replications"), std::runtime_error);
  CHECK_THROWS_WITH_AS(parse_config_text("strategies = BEB, WAT\n", "<t>"),
                       doctest::Contains("unknown strategy"), std::runtime_error);
}

TEST_CASE("a sweep emits one row per grid point") {
  const auto rows = run_sweep(tiny_spec(), ExecMode::Serial);
  REQUIRE(rows.size() == 3);
  for (const auto& row : rows) {
    CHECK(row.strategy == "BEB");
    CHECK(row.n == 3);
    CHECK(row.replications == 2);
    CHECK(row.seed_base == 7);
    CHECK(row.throughput_ci95 >= 0.0);
  }
  CHECK(rows[0].offered_load == doctest::Approx(0.2));
  CHECK(rows[2].offered_load == doctest::Approx(1.0));
}

TEST_CASE("sweeps are deterministic and scheduling-independent") {
  const std::string a = as_csv(run_sweep(tiny_spec(), ExecMode::Serial));
  const std::string b = as_csv(run_sweep(tiny_spec(), ExecMode::Serial));
  const std::string c = as_csv(run_sweep(tiny_spec(), ExecMode::Parallel));
  CHECK(a == b);
  CHECK(a == c);
}

TEST_CASE("row aggregates match hand-computed statistics") {
  SweepSpec spec = tiny_spec();
  spec.offered_loads = {0.8};
  spec.replications = 3;
  const auto rows = run_sweep(spec, ExecMode::Serial);
  REQUIRE(rows.size() == 1);

  std::vector<double> throughputs;
  for (int rep = 0; rep < 3; ++rep) {
    const std::uint64_t seed =
        spec.seed_base + stable_point_hash("BEB", 3, 8, 0.8, rep);
    throughputs.push_back(
        run(spec.config_for(StrategyKind::Beb, 3, 8, 0.8, seed))
            .normalized_throughput);
  }
  const double mean = (throughputs[0] + throughputs[1] + throughputs[2]) / 3.0;
  double ss = 0.0;
  for (double t : throughputs) ss += (t - mean) * (t - mean);
  const double ci = 1.96 * std::sqrt(ss / 2.0) / std::sqrt(3.0);
  CHECK(rows[0].throughput_mean == doctest::Approx(mean).epsilon(1e-12));
  CHECK(rows[0].throughput_ci95 == doctest::Approx(ci).epsilon(1e-12));
}

TEST_CASE("stable hash separates grid points and replications") {
  const auto h = stable_point_hash("BEB", 50, 8, 0.8, 0);
  CHECK(h == stable_point_hash("BEB", 50, 8, 0.8, 0));
  CHECK(h != stable_point_hash("BEB", 50, 8, 0.8, 1));
  CHECK(h != stable_point_hash("DCBTA", 50, 8, 0.8, 0));
  CHECK(h != stable_point_hash("BEB", 51, 8, 0.8, 0));
}

TEST_CASE("csv output has the exact header and one line per row") {
  ResultRow row;
  row.strategy = "DCBTA";
  row.n = 50;
  row.cw_min = 8;
  row.cw_max = 1024;
  row.m = 6;
  row.offered_load = 0.8;
  row.arrival_rate_pps = 122.2;
  row.throughput_mean = 0.123456789;
  row.throughput_ci95 = 0.001;
  row.delay_mean_us = 9587.25;
  row.delay_ci95_us = 12.5;
  row.collision_rate = 0.25;
  row.seed_base = 1;
  row.replications = 5;

  std::ostringstream out;
  emit_csv({row}, out);
  const std::string text = out.str();
  CHECK(text ==
        "strategy,n,cw_min,cw_max,m,offered_load,arrival_rate_pps,"
        "throughput_mean,throughput_ci95,delay_mean_us,delay_ci95_us,"
        "collision_rate,seed_base,replications\n"
        "DCBTA,50,8,1024,6,0.8,122.2,0.123457,0.001,9587.25,12.5,0.25,1,5\n");
  CHECK(text.back() == '\n');
}

TEST_CASE("json output round-trips every field") {
  SweepSpec spec = tiny_spec();
  spec.offered_loads = {0.5};
  const auto rows = run_sweep(spec, ExecMode::Serial);
  std::ostringstream out;
  emit_json(rows, out);
  const auto parsed = nlohmann::json::parse(out.str());
  REQUIRE(parsed.is_array());
  REQUIRE(parsed.size() == 1);
  const auto& j = parsed[0];
  CHECK(j["strategy"] == rows[0].strategy);
  CHECK(j["n"] == rows[0].n);
  CHECK(j["cw_min"] == rows[0].cw_min);
  CHECK(j["offered_load"].get<double>() == rows[0].offered_load);
  CHECK(j["throughput_mean"].get<double>() == rows[0].throughput_mean);
  CHECK(j["throughput_ci95"].get<double>() == rows[0].throughput_ci95);
  CHECK(j["delay_mean_us"].get<double>() == rows[0].delay_mean_us);
  CHECK(j["collision_rate"].get<double>() == rows[0].collision_rate);
  CHECK(j["seed_base"].get<std::uint64_t>() == rows[0].seed_base);
  CHECK(j["replications"] == rows[0].replications);
}

TEST_CASE("spec validation names the offending field") {
  SweepSpec spec = tiny_spec();
  spec.offered_loads.clear();
  CHECK_THROWS_WITH_AS(spec.validate(), doctest::Contains("offered_loads"),
                       std::invalid_argument);
  spec = tiny_spec();
  spec.offered_loads = {-0.5};
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
  spec = tiny_spec();
  spec.replications = 0;
  CHECK_THROWS_WITH_AS(spec.validate(), doctest::Contains("replications"),
                       std::invalid_argument);
}

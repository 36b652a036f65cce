#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "dcf/sweep.hpp"

namespace dcf {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> items;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

[[noreturn]] void fail(const std::string& origin, int line, const std::string& msg) {
  throw std::runtime_error(origin + ":" + std::to_string(line) + ": " + msg);
}

std::int64_t parse_i64(const std::string& origin, int line, const std::string& key,
                       const std::string& value) {
  std::int64_t out = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size())
    fail(origin, line, "key '" + key + "': expected integer, got '" + value + "'");
  return out;
}

double parse_f64(const std::string& origin, int line, const std::string& key,
                 const std::string& value) {
  try {
    std::size_t pos = 0;
    const double out = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return out;
  } catch (const std::exception&) {
    fail(origin, line, "key '" + key + "': expected number, got '" + value + "'");
  }
}

std::vector<double> load_grid(double from, double to, double step) {
  std::vector<double> loads;
  for (int i = 0;; ++i) {
    const double v = from + step * i;
    if (v > to + 1e-9) break;
    // Snap to two decimals so grid values are exact across platforms.
    loads.push_back(std::round(v * 100.0) / 100.0);
  }
  return loads;
}

}  // namespace

std::vector<std::string> preset_names() {
  return {"fig2", "fig3", "fig4", "fig5", "fig6"};
}

SweepSpec make_preset(const std::string& name) {
  SweepSpec spec;
  spec.strategies = {StrategyKind::Beb, StrategyKind::Elba, StrategyKind::Dcbta};
  spec.offered_loads = load_grid(0.05, 1.20, 0.05);
  spec.max_stage = 6;
  spec.cw_max = 1024;
  if (name == "fig2") {
    spec.n_values = {50};
    spec.cw_min_values = {8};
  } else if (name == "fig3") {
    spec.n_values = {50};
    spec.cw_min_values = {8, 16, 32};
  } else if (name == "fig4") {
    spec.n_values = {100};
    spec.cw_min_values = {32};
  } else if (name == "fig5") {
    spec.n_values = {100};
    spec.cw_min_values = {64};
  } else if (name == "fig6") {
    spec.n_values = {100};
    spec.cw_min_values = {128};
  } else {
    throw std::runtime_error("unknown preset '" + name +
                             "' (available: fig2 fig3 fig4 fig5 fig6)");
  }
  return spec;
}

SweepSpec parse_config_text(const std::string& text, const std::string& origin) {
  struct Entry {
    int line;
    std::string key;
    std::string value;
  };
  std::vector<Entry> entries;
  std::stringstream ss(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(ss, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw = raw.substr(0, hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      fail(origin, line_no, "expected 'key = value', got '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) fail(origin, line_no, "missing key before '='");
    entries.push_back(Entry{line_no, key, value});
  }

  SweepSpec spec;
  // A preset line forms the base; everything else overrides it.
  for (const auto& e : entries)
    if (e.key == "preset") spec = make_preset(e.value);

  for (const auto& e : entries) {
    const auto& key = e.key;
    const auto& value = e.value;
    const int ln = e.line;
    if (key == "preset") {
      continue;
    } else if (key == "strategies") {
      spec.strategies.clear();
      for (const auto& item : split_list(value)) {
        try {
          spec.strategies.push_back(parse_strategy(item));
        } catch (const std::exception& ex) {
          fail(origin, ln, ex.what());
        }
      }
    } else if (key == "n") {
      spec.n_values.clear();
      for (const auto& item : split_list(value))
        spec.n_values.push_back(static_cast<int>(parse_i64(origin, ln, key, item)));
    } else if (key == "cw_min") {
      spec.cw_min_values.clear();
      for (const auto& item : split_list(value))
        spec.cw_min_values.push_back(
            static_cast<int>(parse_i64(origin, ln, key, item)));
    } else if (key == "offered_loads") {
      spec.offered_loads.clear();
      for (const auto& item : split_list(value))
        spec.offered_loads.push_back(parse_f64(origin, ln, key, item));
    } else if (key == "replications") {
      spec.replications = static_cast<int>(parse_i64(origin, ln, key, value));
    } else if (key == "seed_base") {
      spec.seed_base = static_cast<std::uint64_t>(parse_i64(origin, ln, key, value));
    } else if (key == "cw_max") {
      spec.cw_max = static_cast<int>(parse_i64(origin, ln, key, value));
    } else if (key == "m") {
      spec.max_stage = static_cast<int>(parse_i64(origin, ln, key, value));
    } else if (key == "cw_threshold") {
      spec.cw_threshold = static_cast<int>(parse_i64(origin, ln, key, value));
    } else if (key == "queue_capacity") {
      spec.queue_capacity = static_cast<int>(parse_i64(origin, ln, key, value));
    } else if (key == "sim_time_us") {
      spec.sim_time_us = parse_i64(origin, ln, key, value);
    } else if (key == "warmup_us") {
      spec.warmup_us = parse_i64(origin, ln, key, value);
    } else if (key == "payload_bits") {
      spec.phy.payload_bits = parse_i64(origin, ln, key, value);
    } else if (key == "data_us") {
      spec.phy.data_us = parse_i64(origin, ln, key, value);
    } else if (key == "channel_rate_bps") {
      spec.phy.channel_rate_bps = parse_i64(origin, ln, key, value);
    } else if (key == "slot_us") {
      spec.phy.slot_us = parse_i64(origin, ln, key, value);
    } else if (key == "difs_us") {
      spec.phy.difs_us = parse_i64(origin, ln, key, value);
    } else if (key == "sifs_us") {
      spec.phy.sifs_us = parse_i64(origin, ln, key, value);
    } else if (key == "ack_timeout_us") {
      spec.phy.ack_timeout_us = parse_i64(origin, ln, key, value);
    } else if (key == "rts_us") {
      spec.phy.rts_us = parse_i64(origin, ln, key, value);
    } else if (key == "cts_us") {
      spec.phy.cts_us = parse_i64(origin, ln, key, value);
    } else if (key == "ack_us") {
      spec.phy.ack_us = parse_i64(origin, ln, key, value);
    } else {
      fail(origin, ln, "unknown key '" + key + "'");
    }
  }

  try {
    spec.validate();
  } catch (const std::exception& ex) {
    throw std::runtime_error(origin + ": " + ex.what());
  }
  return spec;
}

SweepSpec load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str(), path);
}

}  // namespace dcf

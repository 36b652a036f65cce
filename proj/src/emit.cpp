#include <cstdio>
#include <fstream>
#include <iostream>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include "dcf/sweep.hpp"

namespace dcf {

namespace {

// snprintf with %g stays in the C locale as long as nobody calls setlocale,
// which this library never does; the decimal separator is always '.'.
std::string fmt6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

nlohmann::json row_to_json(const ResultRow& row) {
  return nlohmann::json{{"strategy", row.strategy},
                        {"n", row.n},
                        {"cw_min", row.cw_min},
                        {"cw_max", row.cw_max},
                        {"m", row.m},
                        {"offered_load", row.offered_load},
                        {"arrival_rate_pps", row.arrival_rate_pps},
                        {"throughput_mean", row.throughput_mean},
                        {"throughput_ci95", row.throughput_ci95},
                        {"delay_mean_us", row.delay_mean_us},
                        {"delay_ci95_us", row.delay_ci95_us},
                        {"collision_rate", row.collision_rate},
                        {"seed_base", row.seed_base},
                        {"replications", row.replications}};
}

}  // namespace

void emit_csv(const std::vector<ResultRow>& rows, std::ostream& out) {
  out << "strategy,n,cw_min,cw_max,m,offered_load,arrival_rate_pps,"
         "throughput_mean,throughput_ci95,delay_mean_us,delay_ci95_us,"
         "collision_rate,seed_base,replications\n";
  for (const auto& row : rows) {
    out << row.strategy << ',' << row.n << ',' << row.cw_min << ',' << row.cw_max
        << ',' << row.m << ',' << fmt6(row.offered_load) << ','
        << fmt6(row.arrival_rate_pps) << ',' << fmt6(row.throughput_mean) << ','
        << fmt6(row.throughput_ci95) << ',' << fmt6(row.delay_mean_us) << ','
        << fmt6(row.delay_ci95_us) << ',' << fmt6(row.collision_rate) << ','
        << row.seed_base << ',' << row.replications << '\n';
  }
}

void emit_json(const std::vector<ResultRow>& rows, std::ostream& out) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& row : rows) arr.push_back(row_to_json(row));
  out << arr.dump(2) << '\n';
}

void emit(const std::vector<ResultRow>& rows, const std::string& format,
          const std::string& destination) {
  if (rows.empty()) throw std::runtime_error("emit: no rows to write");
  const bool to_stdout = destination == "-" || destination.empty();
  std::ofstream file;
  if (!to_stdout) {
    file.open(destination, std::ios::binary);
    if (!file) throw std::runtime_error("emit: cannot write to '" + destination + "'");
  }
  std::ostream& out = to_stdout ? std::cout : file;
  if (format == "csv")
    emit_csv(rows, out);
  else if (format == "json")
    emit_json(rows, out);
  else
    throw std::runtime_error("emit: unknown format '" + format + "' (csv|json)");
  out.flush();
  if (!to_stdout && !file)
    throw std::runtime_error("emit: write failed for '" + destination + "'");
}

}  // namespace dcf

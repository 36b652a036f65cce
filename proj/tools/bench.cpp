// Compares the serial and OpenMP sweep paths on the same grid and checks
// that they produce identical rows.

#include <chrono>
#include <iostream>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "dcf/sweep.hpp"

namespace {

double seconds_for(const dcf::SweepSpec& spec, dcf::ExecMode mode,
                   std::vector<dcf::ResultRow>& rows) {
  const auto t0 = std::chrono::steady_clock::now();
  rows = dcf::run_sweep(spec, mode);
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(t1 - t0).count();
}

std::string rows_as_csv(const std::vector<dcf::ResultRow>& rows) {
  std::ostringstream out;
  dcf::emit_csv(rows, out);
  return out.str();
}

}  // namespace

int main(int argc, char** argv) {
  double sim_seconds = 20.0;
  if (argc > 1) sim_seconds = std::stod(argv[1]);

  dcf::SweepSpec spec = dcf::make_preset("fig2");
  spec.offered_loads = {0.6, 0.8, 1.0, 1.2};
  spec.replications = 4;
  spec.sim_time_us = static_cast<std::int64_t>(sim_seconds * 1e6);
  spec.warmup_us = spec.sim_time_us / 10;

  const std::size_t runs = spec.strategies.size() * spec.n_values.size() *
                           spec.cw_min_values.size() * spec.offered_loads.size() *
                           static_cast<std::size_t>(spec.replications);
  std::cout << "grid: " << runs << " runs of " << sim_seconds << " simulated seconds\n";

  std::vector<dcf::ResultRow> serial_rows, parallel_rows;
  const double t_serial = seconds_for(spec, dcf::ExecMode::Serial, serial_rows);
  std::cout << "serial:   " << t_serial << " s\n";

#ifdef _OPENMP
  std::cout << "threads:  " << omp_get_max_threads() << '\n';
#endif
  const double t_parallel = seconds_for(spec, dcf::ExecMode::Parallel, parallel_rows);
  std::cout << "parallel: " << t_parallel << " s\n";
  std::cout << "speedup:  " << t_serial / t_parallel << "x\n";

  if (rows_as_csv(serial_rows) != rows_as_csv(parallel_rows)) {
    std::cerr << "FAIL: serial and parallel sweeps disagree\n";
    return 1;
  }
  std::cout << "serial and parallel outputs identical\n";
  return 0;
}

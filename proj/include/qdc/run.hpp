#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "qdc/config.hpp"

namespace qdc {

enum class BenchMethod { gft, qrt };

struct BenchRecord {
  int n_exc = 0;
  BenchMethod method = BenchMethod::gft;
  double wall_seconds = 0.0;
  std::size_t grid_points = 0;
};

/// Times both routes end to end (basis through spectrum) for every n_exc in
/// the config on the shared grid, keeping the minimum of `repeats` runs.
std::vector<BenchRecord> bench(const RunConfig& config, int repeats = 3);

/// Table with one row per n_exc: GFT seconds, QRT seconds, speedup.
void write_bench_table(std::ostream& os, const std::vector<BenchRecord>& records);
void write_bench_csv(std::ostream& os, const std::vector<BenchRecord>& records);

struct RunOutcome {
  std::vector<std::filesystem::path> artifacts;
};

/// Executes the configured mode and writes `<out>.*` artifacts. Any failure
/// (including an unwritable artifact) is raised as an exception.
RunOutcome run(const RunConfig& config, std::ostream& log);

}  // namespace qdc

#pragma once

// Batch experiment runner behind `mssc experiment`: generates instances,
// runs the selected algorithms, and writes one CSV row per
// (instance, algorithm, seed). Rows are computed in parallel (capped by the
// MSSC_THREADS environment variable; 0 or unset means all cores) but always
// emitted in deterministic order.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mssc/io.hpp"

namespace mssc {

inline constexpr char kExperimentCsvHeader[] =
    "instance,n,T,r,algo,seed,covering,moving,total,baseline,ratio,wall_ms";

inline constexpr char kAggregateCsvHeader[] =
    "instance,n,T,r,algo,seeds,mean_covering,stderr_covering,mean_moving,"
    "stderr_moving,mean_total,stderr_total";

struct ExperimentConfig {
  struct Size {
    int n = 0;
    int T = 0;
    int r = 0;
  };
  std::vector<Size> sizes;
  int trials = 1;  // instances generated per size
  int seeds = 1;   // rounding seeds per instance for `rand`
  std::vector<std::string> algos;  // of {exact, mtf-exact, frac, rand, greedy}
  GenDistribution dist = GenDistribution::UniformR;
  std::uint64_t base_seed = 1;
};

struct ExperimentRow {
  std::string instance;
  int n = 0;
  int T = 0;
  int r = 0;
  std::string algo;
  std::uint64_t seed = 0;  // rounding seed; 0 for deterministic algorithms
  double covering = 0.0;
  double moving = 0.0;
  double total = 0.0;
  std::optional<double> baseline;  // exact total within guards, else LP objective
  double wall_ms = 0.0;
};

std::vector<ExperimentRow> run_experiment(const ExperimentConfig& cfg);

std::string rows_to_csv(const std::vector<ExperimentRow>& rows);

// Mean/standard-error aggregation of the `rand` rows, one line per instance.
std::string aggregate_rand_csv(const std::vector<ExperimentRow>& rows);

// Writes to a temporary sibling first, then renames into place.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace mssc

#include "mssc/experiment.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <thread>

#include "mssc/exact.hpp"
#include "mssc/lp.hpp"
#include "mssc/rounding.hpp"

namespace mssc {

namespace {

int thread_budget() {
  if (const char* env = std::getenv("MSSC_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<int>(v);
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc > 0 ? static_cast<int>(hc) : 1;
}

void parallel_for(int count, const std::function<void(int)>& body) {
  const int workers = std::min(thread_budget(), std::max(count, 1));
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&]() {
      for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
        body(i);
      }
    });
  }
  for (auto& th : pool) th.join();
}

double now_ms() {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

// Integers print bare; everything else gets enough digits to round-trip.
std::string format_number(double v) {
  if (std::isfinite(v) && v == std::llround(v) && std::abs(v) < 1e15) {
    return std::to_string(std::llround(v));
  }
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

struct PreparedInstance {
  std::string label;
  ExperimentConfig::Size size;
  Instance inst;
  std::optional<FractionalSequence> frac;
  std::optional<double> baseline;
};

bool needs_frac(const std::vector<std::string>& algos) {
  for (const auto& a : algos) {
    if (a == "frac" || a == "rand" || a == "greedy") return true;
  }
  return false;
}

}  // namespace

std::vector<ExperimentRow> run_experiment(const ExperimentConfig& cfg) {
  for (const auto& algo : cfg.algos) {
    if (algo != "exact" && algo != "mtf-exact" && algo != "frac" &&
        algo != "rand" && algo != "greedy") {
      throw std::invalid_argument("unknown algorithm: " + algo);
    }
  }

  // Phase A: generate instances, solve the shared LP, compute baselines.
  std::vector<PreparedInstance> prepared;
  for (const auto& size : cfg.sizes) {
    for (int trial = 0; trial < cfg.trials; ++trial) {
      PreparedInstance p;
      p.size = size;
      const std::uint64_t gen_seed = cfg.base_seed + trial;
      p.inst = generate_instance(size.n, size.T, size.r, cfg.dist, gen_seed);
      std::ostringstream label;
      label << (cfg.dist == GenDistribution::UniformR ? "u" : "m") << "-n"
            << size.n << "-T" << size.T << "-r" << size.r << "-s" << gen_seed;
      p.label = label.str();
      prepared.push_back(std::move(p));
    }
  }

  const bool want_frac = needs_frac(cfg.algos);
  parallel_for(static_cast<int>(prepared.size()), [&](int k) {
    if (cfg.algos.empty()) return;
    PreparedInstance& p = prepared[k];
    const bool in_guard =
        p.inst.n <= kBruteForceMaxN && p.inst.horizon() <= kBruteForceMaxT;
    if (want_frac || !in_guard) {
      p.frac = solve_fractional_mtf(p.inst);
    }
    p.baseline = in_guard
                     ? static_cast<double>(brute_force_opt(p.inst).report.total)
                     : p.frac->objective;
  });

  // Phase B: one task per row, in deterministic construction order.
  struct Task {
    int prepared_index;
    std::string algo;
    std::uint64_t seed;
  };
  std::vector<Task> tasks;
  for (int k = 0; k < static_cast<int>(prepared.size()); ++k) {
    for (const auto& algo : cfg.algos) {
      if (algo == "rand") {
        for (int s = 1; s <= cfg.seeds; ++s) {
          tasks.push_back({k, algo, static_cast<std::uint64_t>(s)});
        }
      } else {
        tasks.push_back({k, algo, 0});
      }
    }
  }

  std::vector<ExperimentRow> rows(tasks.size());
  parallel_for(static_cast<int>(tasks.size()), [&](int k) {
    const Task& task = tasks[k];
    const PreparedInstance& p = prepared[task.prepared_index];
    ExperimentRow row;
    row.instance = p.label;
    row.n = p.size.n;
    row.T = p.size.T;
    row.r = p.size.r;
    row.algo = task.algo;
    row.seed = task.seed;
    row.baseline = p.baseline;

    const double start = now_ms();
    if (task.algo == "exact") {
      const auto res = brute_force_opt(p.inst);
      row.covering = res.report.total_covering;
      row.moving = res.report.total_moving;
      row.total = res.report.total;
    } else if (task.algo == "mtf-exact") {
      // The optimal MTF solution evaluated in the Mult-MSSC cost model, so
      // the ratio column compares like with like.
      const auto res = brute_force_mtf(p.inst);
      const auto rep = total_cost(p.inst, res.sol);
      row.covering = rep.total_covering;
      row.moving = rep.total_moving;
      row.total = rep.total;
    } else if (task.algo == "frac") {
      row.covering = p.inst.horizon();  // unit request mass pinned at front
      row.moving = p.frac->objective;
      row.total = row.covering + row.moving;
    } else if (task.algo == "rand") {
      const auto sol = randomized_round(*p.frac, p.inst, task.seed);
      const auto rep = total_cost(p.inst, sol);
      row.covering = rep.total_covering;
      row.moving = rep.total_moving;
      row.total = rep.total;
    } else {  // greedy
      const auto res = greedy_round(*p.frac, p.inst);
      const auto rep = total_cost(p.inst, res.sol);
      row.covering = rep.total_covering;
      row.moving = rep.total_moving;
      row.total = rep.total;
    }
    row.wall_ms = now_ms() - start;
    rows[k] = std::move(row);
  });
  return rows;
}

std::string rows_to_csv(const std::vector<ExperimentRow>& rows) {
  std::ostringstream os;
  os << kExperimentCsvHeader << "\n";
  for (const ExperimentRow& row : rows) {
    os << row.instance << "," << row.n << "," << row.T << "," << row.r << ","
       << row.algo << "," << row.seed << "," << format_number(row.covering)
       << "," << format_number(row.moving) << "," << format_number(row.total)
       << ",";
    if (row.baseline) {
      os << format_number(*row.baseline) << ","
         << format_number(row.total / *row.baseline);
    } else {
      os << ",";
    }
    os << "," << format_number(row.wall_ms) << "\n";
  }
  return os.str();
}

std::string aggregate_rand_csv(const std::vector<ExperimentRow>& rows) {
  std::ostringstream os;
  os << kAggregateCsvHeader << "\n";
  // Group consecutive rand rows by instance label (rows arrive sorted by
  // construction).
  size_t k = 0;
  while (k < rows.size()) {
    if (rows[k].algo != "rand") {
      ++k;
      continue;
    }
    size_t end = k;
    while (end < rows.size() && rows[end].algo == "rand" &&
           rows[end].instance == rows[k].instance) {
      ++end;
    }
    const double count = static_cast<double>(end - k);
    auto mean_stderr = [&](auto getter) {
      double mean = 0.0;
      for (size_t i = k; i < end; ++i) mean += getter(rows[i]);
      mean /= count;
      double var = 0.0;
      for (size_t i = k; i < end; ++i) {
        const double d = getter(rows[i]) - mean;
        var += d * d;
      }
      var = count > 1 ? var / (count - 1) : 0.0;
      return std::pair<double, double>(mean, std::sqrt(var / count));
    };
    const auto [mc, sc] = mean_stderr([](const ExperimentRow& r) { return r.covering; });
    const auto [mm, sm] = mean_stderr([](const ExperimentRow& r) { return r.moving; });
    const auto [mt, st] = mean_stderr([](const ExperimentRow& r) { return r.total; });
    os << rows[k].instance << "," << rows[k].n << "," << rows[k].T << ","
       << rows[k].r << ",rand," << static_cast<long long>(count) << ","
       << format_number(mc) << "," << format_number(sc) << ","
       << format_number(mm) << "," << format_number(sm) << ","
       << format_number(mt) << "," << format_number(st) << "\n";
    k = end;
  }
  return os.str();
}

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp + " for writing");
    out << content;
    if (!out.flush()) throw std::runtime_error("write failed for " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace mssc

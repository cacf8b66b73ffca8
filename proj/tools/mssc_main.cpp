#include <chrono>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "mssc/distances.hpp"
#include "mssc/exact.hpp"
#include "mssc/experiment.hpp"
#include "mssc/io.hpp"
#include "mssc/lp.hpp"
#include "mssc/rounding.hpp"

namespace {

// Exit-code taxonomy: 0 ok, 1 usage, 2 parse failure, 3 size guard, 4 stalled.
constexpr int kExitParse = 2;
constexpr int kExitGuard = 3;
constexpr int kExitStalled = 4;

mssc::Instance load_instance(const std::string& path) {
  if (path == "-") return mssc::parse_instance(std::cin);
  std::ifstream in(path);
  if (!in) throw mssc::ParseError("cannot open " + path);
  return mssc::parse_instance(in);
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
  } else {
    mssc::write_file_atomic(out_path, text);
  }
}

mssc::GenDistribution parse_dist(const std::string& name) {
  if (name == "uniform-r") return mssc::GenDistribution::UniformR;
  if (name == "mixed") return mssc::GenDistribution::Mixed;
  throw CLI::ValidationError("--dist", "must be uniform-r or mixed");
}

struct SolveOutput {
  std::string algo;
  mssc::CostReport report;
  std::optional<double> objective;            // LP objective, frac only
  std::vector<double> frac_moving;            // per-round d_FR, frac only
  std::optional<std::uint64_t> seed;
  double wall_ms = 0.0;
};

std::string solve_text(const SolveOutput& s, const mssc::Instance& inst) {
  std::ostringstream os;
  os.precision(12);
  os << "algo " << s.algo << "\n";
  os << "n " << inst.n << " T " << inst.horizon() << " r " << inst.r_bound()
     << "\n";
  if (s.seed) os << "seed " << *s.seed << "\n";
  for (size_t t = 0; t < s.report.covering.size(); ++t) {
    os << "round " << t + 1 << " covering " << s.report.covering[t]
       << " moving ";
    if (s.objective) {
      os << s.frac_moving[t];
    } else {
      os << s.report.moving[t];
    }
    os << "\n";
  }
  os << "covering " << s.report.total_covering << "\n";
  if (s.objective) {
    os << "moving " << *s.objective << "\n";
    os << "objective " << *s.objective << "\n";
    os << "total " << s.report.total_covering + *s.objective << "\n";
  } else {
    os << "moving " << s.report.total_moving << "\n";
    os << "total " << s.report.total << "\n";
  }
  return os.str();
}

std::string solve_json(const SolveOutput& s, const mssc::Instance& inst) {
  nlohmann::json j;
  j["algo"] = s.algo;
  j["n"] = inst.n;
  j["T"] = inst.horizon();
  j["r"] = inst.r_bound();
  j["covering"] = s.report.covering;
  j["total_covering"] = s.report.total_covering;
  if (s.objective) {
    j["moving"] = s.frac_moving;
    j["objective"] = *s.objective;
    j["total_moving"] = *s.objective;
    j["total"] = s.report.total_covering + *s.objective;
  } else {
    j["moving"] = s.report.moving;
    j["total_moving"] = s.report.total_moving;
    j["total"] = s.report.total;
  }
  if (s.seed) j["seed"] = *s.seed;
  return j.dump(2) + "\n";
}

std::string solve_csv(const SolveOutput& s, const mssc::Instance& inst,
                      const std::string& label) {
  std::vector<mssc::ExperimentRow> rows(1);
  mssc::ExperimentRow& row = rows[0];
  row.instance = label;
  row.n = inst.n;
  row.T = inst.horizon();
  row.r = inst.r_bound();
  row.algo = s.algo;
  row.seed = s.seed.value_or(0);
  row.covering = static_cast<double>(s.report.total_covering);
  row.moving = s.objective ? *s.objective
                           : static_cast<double>(s.report.total_moving);
  row.total = row.covering + row.moving;
  row.wall_ms = s.wall_ms;
  return mssc::rows_to_csv(rows);
}

int run_solve(const std::string& file, const std::string& algo,
              std::uint64_t seed, bool as_json, bool as_csv,
              const std::string& dump_lp) {
  const mssc::Instance inst = load_instance(file);
  SolveOutput out;
  out.algo = algo;

  if (!dump_lp.empty()) {
    const auto built = mssc::build_fractional_mtf(inst);
    mssc::write_file_atomic(dump_lp, mssc::lp_to_text(built.lp));
  }

  const auto start = std::chrono::steady_clock::now();
  if (algo == "exact") {
    auto res = mssc::brute_force_opt(inst);
    out.report = std::move(res.report);
  } else if (algo == "mtf-exact") {
    auto res = mssc::brute_force_mtf(inst);
    out.report = mssc::total_cost(inst, res.sol);
  } else if (algo == "frac") {
    const auto frac = mssc::solve_fractional_mtf(inst);
    std::vector<long long> covering(inst.horizon(), 1);
    std::vector<long long> moving(inst.horizon(), 0);
    out.report = mssc::CostReport::from_rounds(std::move(covering), std::move(moving));
    out.objective = frac.objective;
    mssc::StochasticMatrix prev = mssc::matrix_from_permutation(inst.pi0);
    for (const auto& mat : frac.matrices) {
      out.frac_moving.push_back(mssc::footrule_matrix(prev, mat));
      prev = mat;
    }
  } else if (algo == "rand") {
    const auto frac = mssc::solve_fractional_mtf(inst);
    const auto sol = mssc::randomized_round(frac, inst, seed);
    out.report = mssc::total_cost(inst, sol);
    out.seed = seed;
  } else if (algo == "greedy") {
    const auto frac = mssc::solve_fractional_mtf(inst);
    const auto res = mssc::greedy_round(frac, inst);
    out.report = mssc::total_cost(inst, res.sol);
  } else {
    throw CLI::ValidationError("--algo", "unknown algorithm " + algo);
  }
  out.wall_ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - start)
                    .count();

  const std::string label =
      file == "-" ? "-" : std::filesystem::path(file).stem().string();
  if (as_json) {
    std::cout << solve_json(out, inst);
  } else if (as_csv) {
    std::cout << solve_csv(out, inst, label);
  } else {
    std::cout << solve_text(out, inst);
  }
  return 0;
}

std::vector<mssc::ExperimentConfig::Size> parse_sizes(const std::string& spec) {
  std::vector<mssc::ExperimentConfig::Size> sizes;
  std::istringstream in(spec);
  std::string part;
  while (std::getline(in, part, ',')) {
    mssc::ExperimentConfig::Size s;
    if (std::sscanf(part.c_str(), "%d:%d:%d", &s.n, &s.T, &s.r) != 3) {
      throw CLI::ValidationError("--sizes", "expected n:T:r triples");
    }
    sizes.push_back(s);
  }
  if (sizes.empty()) {
    throw CLI::ValidationError("--sizes", "at least one n:T:r triple required");
  }
  return sizes;
}

std::vector<std::string> parse_list(const std::string& spec) {
  std::vector<std::string> out;
  std::istringstream in(spec);
  std::string part;
  while (std::getline(in, part, ',')) {
    if (!part.empty()) out.push_back(part);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multistage Min-Sum Set Cover: instances, LP relaxation, "
               "rounding algorithms, exact oracles"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a random instance");
  int gen_n = 0, gen_T = 0, gen_r = 0;
  std::string gen_dist = "uniform-r", gen_out;
  std::uint64_t gen_seed = 1;
  gen->add_option("--n", gen_n, "universe size")->required();
  gen->add_option("--T", gen_T, "horizon")->required();
  gen->add_option("--r", gen_r, "request cardinality bound")->required();
  gen->add_option("--dist", gen_dist, "uniform-r | mixed");
  gen->add_option("--seed", gen_seed, "generator seed");
  gen->add_option("-o,--out", gen_out, "output file (default stdout)");

  // solve
  auto* solve = app.add_subcommand("solve", "Solve an instance file");
  std::string solve_file, solve_algo, solve_dump_lp;
  std::uint64_t solve_seed = 0;
  bool solve_json_flag = false, solve_csv_flag = false;
  solve->add_option("file", solve_file, "instance file, or - for stdin")
      ->required();
  solve->add_option("--algo", solve_algo, "exact | mtf-exact | frac | rand | greedy")
      ->required()
      ->check(CLI::IsMember({"exact", "mtf-exact", "frac", "rand", "greedy"}));
  solve->add_option("--seed", solve_seed, "rounding seed (rand)");
  solve->add_flag("--json", solve_json_flag, "JSON report");
  solve->add_flag("--csv", solve_csv_flag, "CSV report");
  solve->add_option("--dump-lp", solve_dump_lp,
                    "write the Fractional-MTF LP as text to this file");

  // reduce
  auto* reduce = app.add_subcommand("reduce",
                                    "Reduce a set-cover instance to Mult-MSSC");
  std::string reduce_file, reduce_out;
  long long reduce_dummies = -1;
  reduce->add_option("file", reduce_file, "set-cover file, or - for stdin")
      ->required();
  reduce->add_option("--dummies", reduce_dummies,
                     "dummy element count (default n_sc^2 * m)");
  reduce->add_option("-o,--out", reduce_out, "output file (default stdout)");

  // experiment
  auto* exp = app.add_subcommand("experiment", "Batch runs with a CSV report");
  std::string exp_sizes, exp_algos, exp_dist = "uniform-r", exp_out, exp_agg;
  int exp_trials = 1, exp_seeds = 1;
  std::uint64_t exp_seed = 1;
  exp->add_option("--sizes", exp_sizes, "comma-separated n:T:r triples")
      ->required();
  exp->add_option("--trials", exp_trials, "instances per size");
  exp->add_option("--seeds", exp_seeds, "rounding seeds per instance for rand");
  exp->add_option("--algos", exp_algos,
                  "comma-separated of exact,mtf-exact,frac,rand,greedy "
                  "(empty for a header-only report)");
  exp->add_option("--dist", exp_dist, "uniform-r | mixed");
  exp->add_option("--seed", exp_seed, "base seed");
  exp->add_option("--out", exp_out, "output CSV path")->required();
  exp->add_option("--aggregate", exp_agg,
                  "also write mean/stderr aggregation of rand rows here");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      const auto inst = mssc::generate_instance(gen_n, gen_T, gen_r,
                                                parse_dist(gen_dist), gen_seed);
      emit(mssc::serialize_instance(inst), gen_out);
    } else if (*solve) {
      return run_solve(solve_file, solve_algo, solve_seed, solve_json_flag,
                       solve_csv_flag, solve_dump_lp);
    } else if (*reduce) {
      mssc::SetCoverInstance sc;
      if (reduce_file == "-") {
        sc = mssc::parse_setcover(std::cin);
      } else {
        std::ifstream in(reduce_file);
        if (!in) throw mssc::ParseError("cannot open " + reduce_file);
        sc = mssc::parse_setcover(in);
      }
      const auto inst = mssc::setcover_reduce(
          sc, reduce_dummies >= 0 ? std::optional<long long>(reduce_dummies)
                                  : std::nullopt);
      emit(mssc::serialize_instance(inst), reduce_out);
    } else if (*exp) {
      mssc::ExperimentConfig cfg;
      cfg.sizes = parse_sizes(exp_sizes);
      cfg.trials = exp_trials;
      cfg.seeds = exp_seeds;
      cfg.algos = parse_list(exp_algos);
      cfg.dist = parse_dist(exp_dist);
      cfg.base_seed = exp_seed;
      const auto rows = mssc::run_experiment(cfg);
      mssc::write_file_atomic(exp_out, mssc::rows_to_csv(rows));
      if (!exp_agg.empty()) {
        mssc::write_file_atomic(exp_agg, mssc::aggregate_rand_csv(rows));
      }
    }
  } catch (const mssc::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const mssc::SizeGuardError& e) {
    std::cerr << "size guard: " << e.what() << "\n";
    return kExitGuard;
  } catch (const mssc::SolverStalled& e) {
    std::cerr << "solver stalled: " << e.what() << "\n";
    return kExitStalled;
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

#pragma once

// Brute-force ground truth: exact Mult-MSSC optimum by dynamic programming
// over full permutations, the exact Move-To-Front optimum, and the Set-Cover
// hardness-reduction instance generator.

#include <optional>
#include <stdexcept>
#include <vector>

#include "mssc/core.hpp"

namespace mssc {

struct SizeGuardError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Exact optimum sizes: the permutation-state DP accepts up to these bounds.
// n <= 6 runs on a cached n! x n! Kendall-Tau table; n in {7, 8} runs the
// same DP with the min-plus step done as a multi-source shortest path on the
// adjacent-transposition graph (whose graph distance is exactly d_KT).
inline constexpr int kBruteForceMaxN = 8;
inline constexpr int kBruteForceMaxT = 12;

struct BruteForceResult {
  SolutionSequence sol;
  CostReport report;
};

// Exact minimizer of total covering + moving cost. Ties are broken toward
// the lexicographically smallest permutation sequence. Throws SizeGuardError
// beyond the bounds above.
BruteForceResult brute_force_opt(const Instance& inst);

struct BruteForceMtfResult {
  SolutionSequence sol;
  // FootRule moving cost, the MTF objective (every MTF move of an element
  // from position k costs 2(k-1) in FootRule, twice its Kendall-Tau cost).
  long long moving_cost = 0;
};

// Exact minimizer of the moving cost over MTF solutions: each pi^t is
// pi^{t-1} with some element of R_t moved to the front. Same guard and
// tie-break as brute_force_opt.
BruteForceMtfResult brute_force_mtf(const Instance& inst);

// Set Cover in its element-selection form: pick a minimum number of
// elements of [0, n_elements) so every set contains a picked element.
struct SetCoverInstance {
  int n_elements = 0;
  std::vector<std::vector<int>> sets;
};

std::vector<std::string> validate_setcover(const SetCoverInstance& sc);

namespace detail {
// Test hook: the same DP with the min-plus step forced onto the
// adjacent-transposition graph (the n >= 7 path) regardless of n, so the
// two paths can be checked against each other.
BruteForceResult brute_force_opt_graph(const Instance& inst);
}  // namespace detail

// Hardness-reduction generator: universe of n_sc real elements (keeping
// their ids) plus D dummy elements that appear in no request; pi^0 lists the
// dummies first and the reals last; requests are the sets in order.
// D defaults to n_sc^2 * m.
Instance setcover_reduce(const SetCoverInstance& sc,
                         std::optional<long long> dummy_count = std::nullopt);

}  // namespace mssc

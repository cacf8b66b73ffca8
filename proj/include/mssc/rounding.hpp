#pragma once

// The three rounding algorithms: coupled randomized rounding of the
// Fractional-MTF solution, greedy move-to-front rounding for r-bounded
// requests, and the furthest-in-future greedy solver producing 1/r-granular
// optimal solutions of the first-position LP.

#include <cstdint>
#include <utility>
#include <vector>

#include "mssc/core.hpp"
#include "mssc/granular.hpp"

namespace mssc {

// One alpha per element, drawn once in increasing element-id order from a
// SplitMix64 stream; the same seed reproduces the same array bit for bit.
struct RoundingSeedState {
  std::uint64_t seed = 0;
  std::vector<double> alpha;

  static RoundingSeedState from_seed(std::uint64_t seed, int n);
};

// Moves e to position 1, preserving the relative order of everything else.
// The moving cost Pos(e) - 1 equals the Kendall-Tau distance to the input.
std::pair<Permutation, int> move_to_front(const Permutation& pi, ElementId e);

// Coupled randomized rounding: per round, element e gets index
// I_e = min{ i : min(1, log2(n) * prefix_mass(e, i)) >= alpha_e } (falling
// back to n), and the round's permutation sorts elements by (I_e, e).
// Alphas are fixed across rounds, which is what couples consecutive
// permutations. n < 2 degenerates to repeating pi^0.
SolutionSequence randomized_round(const FractionalSequence& frac,
                                  const Instance& inst, std::uint64_t seed);

struct GreedyRoundResult {
  SolutionSequence sol;
  std::vector<ElementId> chosen;  // e_t moved to the front at round t
};

// Per round, moves to the front the smallest-id element of R_t holding mass
// at least 1/|R_t| at position 1 (one exists by pigeonhole when the request
// constraint holds). Throws std::invalid_argument otherwise.
GreedyRoundResult greedy_round(const FractionalSequence& frac,
                               const Instance& inst);

// Greedy optimal solver for the first-position LP, in exact 1/r units.
// Per round: if the chosen element already has a unit at column 1 the matrix
// is copied forward; otherwise one unit moves from its leftmost occupied
// column to column 1 and column stochasticity is restored left to right,
// evicting redundant mass (prefix >= 2 units) when possible and otherwise
// the element whose next occurrence in the remaining chosen sequence is
// furthest in the future (never occurring counts as furthest; ties go to the
// smallest id). The unit just placed for e_t never leaves column 1.
std::vector<GranularMatrix> greedy_lp_solve(const Permutation& pi0,
                                            const std::vector<ElementId>& chosen,
                                            int r);

}  // namespace mssc

#pragma once

// The four distance notions: Kendall-Tau and FootRule on permutations,
// FootRule on stochastic matrices (1-D transportation cost per row), and
// fractional Kendall-Tau on matrices via r-indices. Also the neighboring
// decomposition used by the randomized-rounding analysis.

#include <vector>

#include "mssc/core.hpp"
#include "mssc/granular.hpp"

namespace mssc {

// Number of element pairs with opposite relative order; 0..n(n-1)/2.
long long kendall_tau(const Permutation& a, const Permutation& b);

// Sum over elements of absolute position displacement.
long long footrule_perm(const Permutation& a, const Permutation& b);

// FootRule distance between stochastic matrices: per row, the 1-D
// transportation cost with ground cost |i-j|, computed in closed form as
// sum_e sum_{i<n} |CDF_a(e,i) - CDF_b(e,i)|. Requires row sums to agree
// per row within kEpsRow. The transportation LP itself is kept only as a
// test oracle (see lp builders).
double footrule_matrix(const StochasticMatrix& a, const StochasticMatrix& b);

// First position where e's cumulative row mass reaches 1/r (with kEpsNum
// slack); 1-indexed.
int r_index(const StochasticMatrix& a, ElementId e, int r);

// Exact integer variant for granular matrices: first pos with
// prefix_units * r >= granularity.
int r_index(const GranularMatrix& a, ElementId e, int r);

// Unordered pairs (e, e') whose r-index comparison flips between a and b,
// including flips into or out of a tie (Fractional Kendall-Tau).
long long fractional_kendall_tau(const StochasticMatrix& a,
                                 const StochasticMatrix& b, int r);

// Exact variant; both matrices must share n and granularity, and r is the
// common granularity.
long long fractional_kendall_tau(const GranularMatrix& a,
                                 const GranularMatrix& b);

// One unit move of the decomposition: `matrix` is the state after moving
// `mass` of `moved_element` from column from_col to the adjacent to_col.
struct NeighborStep {
  StochasticMatrix matrix;
  ElementId moved_element = -1;
  int from_col = 0;
  int to_col = 0;
  double mass = 0.0;
};

// Converts a into b through a finite chain of neighboring stochastic
// matrices (consecutive matrices differ in exactly two entries on the same
// row and adjacent columns) with every intermediate column sum <= 2 and
// telescoped FootRule cost equal to footrule_matrix(a, b). Both inputs
// must be doubly stochastic. a == b yields an empty chain.
std::vector<NeighborStep> decompose_neighboring(const StochasticMatrix& a,
                                                const StochasticMatrix& b);

}  // namespace mssc

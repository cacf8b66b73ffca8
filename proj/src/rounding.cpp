#include "mssc/rounding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "mssc/rng.hpp"

namespace mssc {

RoundingSeedState RoundingSeedState::from_seed(std::uint64_t seed, int n) {
  RoundingSeedState st;
  st.seed = seed;
  st.alpha.resize(n);
  SplitMix64 gen(seed);
  for (int e = 0; e < n; ++e) st.alpha[e] = gen.next_double();
  return st;
}

std::pair<Permutation, int> move_to_front(const Permutation& pi, ElementId e) {
  const int pos = pi.position_of(e);
  if (pos == 1) return {pi, 0};
  std::vector<ElementId> order;
  order.reserve(pi.size());
  order.push_back(e);
  for (ElementId x : pi.order()) {
    if (x != e) order.push_back(x);
  }
  return {Permutation(std::move(order)), pos - 1};
}

SolutionSequence randomized_round(const FractionalSequence& frac,
                                  const Instance& inst, std::uint64_t seed) {
  const int n = inst.n;
  const int T = inst.horizon();
  if (frac.rounds() != T) {
    throw std::invalid_argument("fractional sequence length differs from horizon");
  }
  SolutionSequence sol;
  sol.perms.reserve(T);
  if (n < 2) {
    for (int t = 0; t < T; ++t) sol.perms.push_back(inst.pi0);
    return sol;
  }

  const RoundingSeedState st = RoundingSeedState::from_seed(seed, n);
  const double scale = std::log2(static_cast<double>(n));
  std::vector<std::pair<int, ElementId>> keyed(n);
  for (int t = 0; t < T; ++t) {
    const StochasticMatrix& a = frac.matrices[t];
    for (ElementId e = 0; e < n; ++e) {
      int index = n;
      double prefix = 0.0;
      for (int i = 1; i <= n; ++i) {
        prefix += a.entry(e, i);
        if (std::min(1.0, scale * prefix) >= st.alpha[e]) {
          index = i;
          break;
        }
      }
      keyed[e] = {index, e};
    }
    std::sort(keyed.begin(), keyed.end());
    std::vector<ElementId> order(n);
    for (int p = 0; p < n; ++p) order[p] = keyed[p].second;
    sol.perms.emplace_back(std::move(order));
  }
  return sol;
}

GreedyRoundResult greedy_round(const FractionalSequence& frac,
                               const Instance& inst) {
  const int T = inst.horizon();
  if (frac.rounds() != T) {
    throw std::invalid_argument("fractional sequence length differs from horizon");
  }
  GreedyRoundResult out;
  out.sol.perms.reserve(T);
  out.chosen.reserve(T);
  Permutation cur = inst.pi0;
  for (int t = 0; t < T; ++t) {
    const Request& req = inst.requests[t];
    const double threshold = 1.0 / req.size() - kEpsNum;
    ElementId pick = -1;
    for (ElementId e : req.members) {  // members sorted: smallest id wins
      if (frac.matrices[t].entry(e, 1) >= threshold) {
        pick = e;
        break;
      }
    }
    if (pick < 0) {
      throw std::invalid_argument("infeasible fractional input");
    }
    cur = move_to_front(cur, pick).first;
    out.sol.perms.push_back(cur);
    out.chosen.push_back(pick);
  }
  return out;
}

namespace {

constexpr int kNever = std::numeric_limits<int>::max();

}  // namespace

std::vector<GranularMatrix> greedy_lp_solve(const Permutation& pi0,
                                            const std::vector<ElementId>& chosen,
                                            int r) {
  const int n = pi0.size();
  const int T = static_cast<int>(chosen.size());
  if (r < 1) throw std::invalid_argument("r must be >= 1");
  for (ElementId e : chosen) {
    if (e < 0 || e >= n) throw std::invalid_argument("chosen element out of range");
  }

  // next_occ[k][e]: first index >= k with chosen[index] == e, kNever if none.
  std::vector<std::vector<int>> next_occ(T + 1, std::vector<int>(n, kNever));
  for (int k = T - 1; k >= 0; --k) {
    next_occ[k] = next_occ[k + 1];
    next_occ[k][chosen[k]] = k;
  }

  std::vector<GranularMatrix> out;
  out.reserve(T);
  GranularMatrix cur = GranularMatrix::from_permutation(pi0, r);

  for (int t = 0; t < T; ++t) {
    const ElementId et = chosen[t];
    if (cur.units(et, 1) < 1) {
      int pos = 0;
      for (int i = 1; i <= n; ++i) {
        if (cur.units(et, i) >= 1) {
          pos = i;
          break;
        }
      }
      if (pos == 0) throw std::logic_error("row of chosen element is empty");
      cur.add_units(et, pos, -1);
      cur.add_units(et, 1, +1);

      // Column 1 now holds r+1 units and column pos holds r-1; push one unit
      // rightward, column by column, until the gap closes.
      for (int j = 1; j < pos; ++j) {
        ElementId mover = -1;
        // Redundant mass first: prefix through j of at least 2 units and a
        // unit sitting at column j.
        for (ElementId e = 0; e < n; ++e) {
          if (j == 1 && e == et) continue;  // the unit just placed is pinned
          if (cur.units(e, j) < 1) continue;
          long long prefix = 0;
          for (int s = 1; s <= j; ++s) prefix += cur.units(e, s);
          if (prefix >= 2) {
            mover = e;
            break;
          }
        }
        if (mover < 0) {
          // Evict the element appearing furthest in the remaining sequence.
          int best_key = -1;
          for (ElementId e = 0; e < n; ++e) {
            if (j == 1 && e == et) continue;
            if (cur.units(e, j) < 1) continue;
            const int key = next_occ[t + 1][e];
            if (key > best_key) {
              best_key = key;
              mover = e;
            }
          }
        }
        if (mover < 0) throw std::logic_error("column restore found no mover");
        cur.add_units(mover, j, -1);
        cur.add_units(mover, j + 1, +1);
      }
      if (!cur.is_doubly_stochastic_units() || cur.units(et, 1) < 1) {
        throw std::logic_error("column restore broke stochasticity");
      }
    }
    out.push_back(cur);
  }
  return out;
}

}  // namespace mssc

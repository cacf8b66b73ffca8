#include "mssc/distances.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mssc {

namespace {

void check_same_size(int a, int b) {
  if (a != b) throw std::invalid_argument("size mismatch");
}

}  // namespace

long long kendall_tau(const Permutation& a, const Permutation& b) {
  check_same_size(a.size(), b.size());
  const int n = a.size();
  // rank[k] = position in b of the element at position k+1 of a; inversions
  // of this array are exactly the discordant pairs.
  std::vector<int> rank(n);
  for (int p = 0; p < n; ++p) rank[p] = b.position_of(a.order()[p]);
  long long inv = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (rank[i] > rank[j]) ++inv;
    }
  }
  return inv;
}

long long footrule_perm(const Permutation& a, const Permutation& b) {
  check_same_size(a.size(), b.size());
  long long d = 0;
  for (ElementId e = 0; e < a.size(); ++e) {
    d += std::abs(a.position_of(e) - b.position_of(e));
  }
  return d;
}

double footrule_matrix(const StochasticMatrix& a, const StochasticMatrix& b) {
  check_same_size(a.size(), b.size());
  const int n = a.size();
  double total = 0.0;
  for (ElementId e = 0; e < n; ++e) {
    if (std::abs(a.row_sum(e) - b.row_sum(e)) > kEpsRow) {
      throw std::invalid_argument("row marginals differ beyond tolerance");
    }
    double ca = 0.0, cb = 0.0;
    for (int pos = 1; pos < n; ++pos) {
      ca += a.entry(e, pos);
      cb += b.entry(e, pos);
      total += std::abs(ca - cb);
    }
  }
  return total;
}

int r_index(const StochasticMatrix& a, ElementId e, int r) {
  if (r < 1) throw std::invalid_argument("r must be >= 1");
  const double threshold = 1.0 / r - kEpsNum;
  double prefix = 0.0;
  for (int pos = 1; pos <= a.size(); ++pos) {
    prefix += a.entry(e, pos);
    if (prefix >= threshold) return pos;
  }
  return a.size();  // row sums to 1, so only reachable through rounding noise
}

int r_index(const GranularMatrix& a, ElementId e, int r) {
  if (r < 1) throw std::invalid_argument("r must be >= 1");
  long long prefix = 0;
  for (int pos = 1; pos <= a.size(); ++pos) {
    prefix += a.units(e, pos);
    if (prefix * r >= a.granularity()) return pos;
  }
  return a.size();
}

namespace {

// Inverted iff the three-way comparison of r-indices differs between the two
// matrices (strict flip, or a tie on exactly one side).
long long count_inversions(const std::vector<int>& ia,
                           const std::vector<int>& ib) {
  const int n = static_cast<int>(ia.size());
  long long count = 0;
  for (int e = 0; e < n; ++e) {
    for (int f = e + 1; f < n; ++f) {
      const int sa = (ia[e] > ia[f]) - (ia[e] < ia[f]);
      const int sb = (ib[e] > ib[f]) - (ib[e] < ib[f]);
      if (sa != sb) ++count;
    }
  }
  return count;
}

}  // namespace

long long fractional_kendall_tau(const StochasticMatrix& a,
                                 const StochasticMatrix& b, int r) {
  check_same_size(a.size(), b.size());
  const int n = a.size();
  std::vector<int> ia(n), ib(n);
  for (ElementId e = 0; e < n; ++e) {
    ia[e] = r_index(a, e, r);
    ib[e] = r_index(b, e, r);
  }
  return count_inversions(ia, ib);
}

long long fractional_kendall_tau(const GranularMatrix& a,
                                 const GranularMatrix& b) {
  check_same_size(a.size(), b.size());
  if (a.granularity() != b.granularity()) {
    throw std::invalid_argument("granularity mismatch");
  }
  const int n = a.size();
  const int r = a.granularity();
  std::vector<int> ia(n), ib(n);
  for (ElementId e = 0; e < n; ++e) {
    ia[e] = r_index(a, e, r);
    ib[e] = r_index(b, e, r);
  }
  return count_inversions(ia, ib);
}

namespace {

constexpr double kFlowDrop = 1e-13;

struct Flow {
  ElementId e;
  int src;  // 1-indexed columns
  int dst;
  double amount;
};

// Monotone (non-crossing) per-row matching of a's mass to b's mass; optimal
// for the line metric. Flows with src == dst are neutral and omitted.
std::vector<Flow> monotone_flows(const StochasticMatrix& a,
                                 const StochasticMatrix& b) {
  const int n = a.size();
  std::vector<Flow> flows;
  for (ElementId e = 0; e < n; ++e) {
    int i = 1, j = 1;
    double avail = a.entry(e, 1), need = b.entry(e, 1);
    while (i <= n && j <= n) {
      const double moved = std::min(avail, need);
      if (moved > kFlowDrop && i != j) flows.push_back({e, i, j, moved});
      avail -= moved;
      need -= moved;
      if (avail <= kFlowDrop) {
        if (++i <= n) avail = a.entry(e, i);
      }
      if (need <= kFlowDrop) {
        if (++j <= n) need = b.entry(e, j);
      }
    }
  }
  return flows;
}

void merge_or_add(std::vector<Flow>& flows, const Flow& f) {
  for (Flow& g : flows) {
    if (g.e == f.e && g.src == f.src && g.dst == f.dst) {
      g.amount += f.amount;
      return;
    }
  }
  flows.push_back(f);
}

}  // namespace

std::vector<NeighborStep> decompose_neighboring(const StochasticMatrix& a,
                                                const StochasticMatrix& b) {
  check_same_size(a.size(), b.size());
  if (!a.is_doubly_stochastic() || !b.is_doubly_stochastic()) {
    throw std::invalid_argument("inputs must be doubly stochastic");
  }
  const int n = a.size();

  std::vector<Flow> flows = monotone_flows(a, b);
  StochasticMatrix cur = a;
  std::vector<NeighborStep> steps;

  auto emit_move = [&](ElementId e, int from, int to, double mass) {
    cur.entry_mut(e, from) -= mass;
    if (cur.entry(e, from) < 0.0) cur.entry_mut(e, from) = 0.0;
    cur.entry_mut(e, to) += mass;
    steps.push_back({cur, e, from, to, mass});
  };

  const long long iteration_cap = 100 + 50LL * n * n * n;
  long long iterations = 0;
  while (!flows.empty()) {
    if (++iterations > iteration_cap) {
      throw std::runtime_error("neighboring decomposition failed to settle");
    }
    // Pair selection: a right-moving parcel from column i
    // reaching at least j, and a left-moving parcel from column j reaching
    // at most i. Scan order fixes the tie-break: smallest element id, then
    // smallest column, on both sides.
    std::sort(flows.begin(), flows.end(), [](const Flow& x, const Flow& y) {
      if (x.e != y.e) return x.e < y.e;
      if (x.src != y.src) return x.src < y.src;
      return x.dst < y.dst;
    });
    int pick_right = -1, pick_left = -1;
    for (size_t f1 = 0; f1 < flows.size() && pick_right < 0; ++f1) {
      if (flows[f1].dst <= flows[f1].src) continue;
      for (size_t f2 = 0; f2 < flows.size(); ++f2) {
        if (flows[f2].dst >= flows[f2].src) continue;
        const int i = flows[f1].src, j = flows[f2].src;
        if (i < j && flows[f1].dst >= j && flows[f2].dst <= i) {
          pick_right = static_cast<int>(f1);
          pick_left = static_cast<int>(f2);
          break;
        }
      }
    }
    if (pick_right < 0) {
      throw std::runtime_error("no neighboring pair found; flows inconsistent");
    }

    Flow right = flows[pick_right];
    Flow left = flows[pick_left];
    const int i = right.src, j = left.src;
    const double eps = std::min(right.amount, left.amount);

    // Walk the right parcel i -> j, then the left parcel j -> i. Column sums
    // stay within [1 - eps, 1 + eps] throughout and end balanced.
    for (int c = i; c < j; ++c) emit_move(right.e, c, c + 1, eps);
    for (int c = j; c > i; --c) emit_move(left.e, c, c - 1, eps);

    // Advance bookkeeping: consumed amounts re-enter as shorter flows
    // unless the parcel arrived at its destination.
    std::vector<Flow> next;
    next.reserve(flows.size() + 2);
    for (size_t k = 0; k < flows.size(); ++k) {
      if (static_cast<int>(k) == pick_right || static_cast<int>(k) == pick_left)
        continue;
      next.push_back(flows[k]);
    }
    if (right.amount - eps > kFlowDrop) {
      merge_or_add(next, {right.e, right.src, right.dst, right.amount - eps});
    }
    if (right.dst > j) merge_or_add(next, {right.e, j, right.dst, eps});
    if (left.amount - eps > kFlowDrop) {
      merge_or_add(next, {left.e, left.src, left.dst, left.amount - eps});
    }
    if (left.dst < i) merge_or_add(next, {left.e, i, left.dst, eps});
    flows = std::move(next);
  }
  return steps;
}

}  // namespace mssc

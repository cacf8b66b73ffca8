#include "mssc/exact.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <queue>

#include "mssc/distances.hpp"

namespace mssc {

namespace {

constexpr long long kInf = std::numeric_limits<long long>::max() / 4;

long long factorial(int n) {
  long long f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

std::vector<std::vector<ElementId>> all_permutations(int n) {
  std::vector<ElementId> base(n);
  for (int i = 0; i < n; ++i) base[i] = i;
  std::vector<std::vector<ElementId>> perms;
  perms.reserve(factorial(n));
  do {
    perms.push_back(base);
  } while (std::next_permutation(base.begin(), base.end()));
  return perms;
}

// Lexicographic rank via the Lehmer code.
int lehmer_rank(const std::vector<ElementId>& p) {
  const int n = static_cast<int>(p.size());
  int rank = 0;
  for (int i = 0; i < n; ++i) {
    int smaller = 0;
    for (int j = i + 1; j < n; ++j) {
      if (p[j] < p[i]) ++smaller;
    }
    rank = rank * (n - i) + smaller;
  }
  return rank;
}

int kt_arrays(const std::vector<ElementId>& a, const std::vector<ElementId>& b) {
  const int n = static_cast<int>(a.size());
  std::vector<int> pos_b(n);
  for (int p = 0; p < n; ++p) pos_b[b[p]] = p;
  int inv = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (pos_b[a[i]] > pos_b[a[j]]) ++inv;
    }
  }
  return inv;
}

// Per-n caches: the full pairwise Kendall-Tau table (small n) and the
// adjacent-transposition neighbor lists (larger n), built lazily behind a
// read-mostly guard.
struct PermTables {
  std::vector<std::vector<ElementId>> perms;
  std::vector<uint16_t> kt;    // n <= 6 path
  std::vector<int> neighbors;  // n! x (n-1), graph path
};

const PermTables& tables_for(int n, bool need_table, bool need_neighbors) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<PermTables>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) {
    auto fresh = std::make_unique<PermTables>();
    fresh->perms = all_permutations(n);
    it = cache.emplace(n, std::move(fresh)).first;
  }
  PermTables& t = *it->second;
  const long long total = static_cast<long long>(t.perms.size());
  if (need_table && t.kt.empty()) {
    t.kt.resize(total * total);
    for (long long a = 0; a < total; ++a) {
      t.kt[a * total + a] = 0;
      for (long long b = a + 1; b < total; ++b) {
        const uint16_t d =
            static_cast<uint16_t>(kt_arrays(t.perms[a], t.perms[b]));
        t.kt[a * total + b] = d;
        t.kt[b * total + a] = d;
      }
    }
  }
  if (need_neighbors && t.neighbors.empty()) {
    t.neighbors.resize(total * (n - 1));
    std::vector<ElementId> buf;
    for (long long p = 0; p < total; ++p) {
      buf = t.perms[p];
      for (int k = 0; k + 1 < n; ++k) {
        std::swap(buf[k], buf[k + 1]);
        t.neighbors[p * (n - 1) + k] = lehmer_rank(buf);
        std::swap(buf[k], buf[k + 1]);
      }
    }
  }
  return t;
}

// f(p) = min_q (init(q) + d_KT(p, q)) for all p at once: either a direct
// sweep over the pairwise table, or a multi-source shortest path on the
// adjacent-transposition graph, where unit edges make the graph distance
// coincide with d_KT.
std::vector<long long> minplus_kt(const PermTables& t, int n,
                                  std::vector<long long> init) {
  const long long total = static_cast<long long>(t.perms.size());
  if (!t.kt.empty()) {
    std::vector<long long> out(total, kInf);
    for (long long p = 0; p < total; ++p) {
      long long best = kInf;
      const uint16_t* row = t.kt.data() + p * total;
      for (long long q = 0; q < total; ++q) {
        const long long v = init[q] + row[q];
        if (v < best) best = v;
      }
      out[p] = best;
    }
    return out;
  }
  using Item = std::pair<long long, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
  for (long long q = 0; q < total; ++q) {
    if (init[q] < kInf) heap.push({init[q], static_cast<int>(q)});
  }
  std::vector<long long>& dist = init;
  while (!heap.empty()) {
    auto [d, p] = heap.top();
    heap.pop();
    if (d > dist[p]) continue;
    const int* nb = t.neighbors.data() + static_cast<long long>(p) * (n - 1);
    for (int k = 0; k + 1 < n; ++k) {
      if (d + 1 < dist[nb[k]]) {
        dist[nb[k]] = d + 1;
        heap.push({d + 1, nb[k]});
      }
    }
  }
  return dist;
}

void check_guard(const Instance& inst) {
  const auto violations = validate_instance(inst);
  if (!violations.empty()) {
    throw std::invalid_argument("invalid instance: " + violations.front());
  }
  if (inst.n > kBruteForceMaxN || inst.horizon() > kBruteForceMaxT) {
    throw SizeGuardError("instance exceeds brute-force size guard (n <= " +
                         std::to_string(kBruteForceMaxN) + ", T <= " +
                         std::to_string(kBruteForceMaxT) + ")");
  }
}

std::vector<long long> covering_by_perm(const PermTables& t,
                                        const Request& req) {
  const long long total = static_cast<long long>(t.perms.size());
  const int n = static_cast<int>(t.perms.front().size());
  uint32_t mask = 0;
  for (ElementId e : req.members) mask |= 1u << e;
  std::vector<long long> cov(total);
  for (long long q = 0; q < total; ++q) {
    const auto& perm = t.perms[q];
    int c = n;
    for (int p = 0; p < n; ++p) {
      if (mask & (1u << perm[p])) {
        c = p + 1;
        break;
      }
    }
    cov[q] = c;
  }
  return cov;
}

BruteForceResult brute_force_opt_impl(const Instance& inst, bool force_graph) {
  check_guard(inst);
  const int n = inst.n;
  const int T = inst.horizon();
  const bool use_graph = force_graph || n > 6;
  const PermTables& t = tables_for(n, !use_graph, use_graph);
  const long long total = static_cast<long long>(t.perms.size());

  // cost_to_go[t](p) with p the permutation before round t+1; built backward
  // so the forward reconstruction can take lexicographically smallest argmins.
  std::vector<std::vector<long long>> cost_to_go(T + 1);
  std::vector<std::vector<long long>> cov(T);
  cost_to_go[T].assign(total, 0);
  for (int round = T - 1; round >= 0; --round) {
    cov[round] = covering_by_perm(t, inst.requests[round]);
    std::vector<long long> init(total);
    for (long long q = 0; q < total; ++q) {
      init[q] = cov[round][q] + cost_to_go[round + 1][q];
    }
    cost_to_go[round] = minplus_kt(t, n, std::move(init));
  }

  BruteForceResult out;
  std::vector<long long> covering(T), moving(T);
  std::vector<ElementId> cur = inst.pi0.order();
  for (int round = 0; round < T; ++round) {
    const long long target = cost_to_go[round][lehmer_rank(cur)];
    long long best = kInf;
    long long pick = -1;
    for (long long q = 0; q < total; ++q) {
      const long long v = kt_arrays(cur, t.perms[q]) + cov[round][q] +
                          cost_to_go[round + 1][q];
      if (v < best) {
        best = v;
        pick = q;
      }
    }
    if (best != target) throw std::logic_error("DP reconstruction mismatch");
    covering[round] = cov[round][pick];
    moving[round] = kt_arrays(cur, t.perms[pick]);
    cur = t.perms[pick];
    out.sol.perms.push_back(Permutation(cur));
  }
  out.report = CostReport::from_rounds(std::move(covering), std::move(moving));
  return out;
}

}  // namespace

BruteForceResult brute_force_opt(const Instance& inst) {
  return brute_force_opt_impl(inst, false);
}

namespace detail {

BruteForceResult brute_force_opt_graph(const Instance& inst) {
  return brute_force_opt_impl(inst, true);
}

}  // namespace detail

BruteForceMtfResult brute_force_mtf(const Instance& inst) {
  check_guard(inst);
  const int T = inst.horizon();

  auto mtf_move = [](const std::vector<ElementId>& p, ElementId e) {
    std::vector<ElementId> q;
    q.reserve(p.size());
    q.push_back(e);
    for (ElementId x : p) {
      if (x != e) q.push_back(x);
    }
    return q;
  };
  auto fr_cost = [](const std::vector<ElementId>& p, ElementId e) {
    for (size_t k = 0; k < p.size(); ++k) {
      if (p[k] == e) return 2LL * static_cast<long long>(k);
    }
    return kInf;
  };

  // Layered reachable states, keyed by lexicographic rank.
  std::vector<std::map<int, std::vector<ElementId>>> layers(T + 1);
  layers[0].emplace(lehmer_rank(inst.pi0.order()), inst.pi0.order());
  for (int round = 0; round < T; ++round) {
    for (const auto& [rank, perm] : layers[round]) {
      for (ElementId e : inst.requests[round].members) {
        auto next = mtf_move(perm, e);
        const int next_rank = lehmer_rank(next);
        layers[round + 1].emplace(next_rank, std::move(next));
      }
    }
  }

  std::vector<std::map<int, long long>> cost_to_go(T + 1);
  for (const auto& [rank, perm] : layers[T]) cost_to_go[T][rank] = 0;
  for (int round = T - 1; round >= 0; --round) {
    for (const auto& [rank, perm] : layers[round]) {
      long long best = kInf;
      for (ElementId e : inst.requests[round].members) {
        const long long v =
            fr_cost(perm, e) +
            cost_to_go[round + 1].at(lehmer_rank(mtf_move(perm, e)));
        best = std::min(best, v);
      }
      cost_to_go[round][rank] = best;
    }
  }

  BruteForceMtfResult out;
  std::vector<ElementId> cur = inst.pi0.order();
  out.moving_cost = cost_to_go[0].at(lehmer_rank(cur));
  for (int round = 0; round < T; ++round) {
    long long best = kInf;
    std::vector<ElementId> best_perm;
    for (ElementId e : inst.requests[round].members) {
      auto next = mtf_move(cur, e);
      const long long v =
          fr_cost(cur, e) + cost_to_go[round + 1].at(lehmer_rank(next));
      if (v < best || (v == best && next < best_perm)) {
        best = v;
        best_perm = std::move(next);
      }
    }
    cur = best_perm;
    out.sol.perms.push_back(Permutation(std::move(best_perm)));
  }
  return out;
}

std::vector<std::string> validate_setcover(const SetCoverInstance& sc) {
  std::vector<std::string> violations;
  if (sc.n_elements < 1) violations.push_back("element count must be positive");
  for (size_t s = 0; s < sc.sets.size(); ++s) {
    if (sc.sets[s].empty()) {
      violations.push_back("set " + std::to_string(s + 1) + " is empty");
      continue;
    }
    for (int e : sc.sets[s]) {
      if (e < 0 || e >= sc.n_elements) {
        violations.push_back("set " + std::to_string(s + 1) +
                             ": member out of range");
        break;
      }
    }
  }
  return violations;
}

Instance setcover_reduce(const SetCoverInstance& sc,
                         std::optional<long long> dummy_count) {
  const auto violations = validate_setcover(sc);
  if (!violations.empty()) {
    throw std::invalid_argument("invalid set-cover instance: " +
                                violations.front());
  }
  const long long n_sc = sc.n_elements;
  const long long m = static_cast<long long>(sc.sets.size());
  const long long dummies =
      dummy_count.value_or(n_sc * n_sc * m);
  if (dummies < 0) throw std::invalid_argument("dummy count must be >= 0");
  const long long n_total = n_sc + dummies;
  if (n_total > 10'000'000) {
    throw std::invalid_argument("reduced universe too large to materialize");
  }

  Instance inst;
  inst.n = static_cast<int>(n_total);
  std::vector<ElementId> order;
  order.reserve(n_total);
  for (long long d = 0; d < dummies; ++d) {
    order.push_back(static_cast<ElementId>(n_sc + d));
  }
  for (long long e = 0; e < n_sc; ++e) order.push_back(static_cast<ElementId>(e));
  inst.pi0 = Permutation(std::move(order));
  inst.requests.reserve(m);
  for (const auto& set : sc.sets) {
    inst.requests.emplace_back(std::vector<ElementId>(set.begin(), set.end()));
  }
  return inst;
}

}  // namespace mssc

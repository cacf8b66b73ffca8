#pragma once

// Test-only helpers: deterministic random objects and independent oracles.
// Nothing here is part of the library; implementations under test must not
// be reachable from these code paths (the exhaustive searches and grid scans
// stand on their own).

#include <algorithm>
#include <functional>
#include <vector>

#include "mssc/core.hpp"
#include "mssc/exact.hpp"
#include "mssc/granular.hpp"
#include "mssc/rng.hpp"

namespace mssc::testing {

inline Permutation random_permutation(int n, SplitMix64& gen) {
  std::vector<ElementId> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  for (int i = n - 1; i > 0; --i) {
    const int j = static_cast<int>(gen.next_below(i + 1));
    std::swap(order[i], order[j]);
  }
  return Permutation(std::move(order));
}

// Birkhoff point: convex combination of k random permutation matrices.
inline StochasticMatrix random_doubly_stochastic(int n, int k,
                                                 SplitMix64& gen) {
  std::vector<double> weights(k);
  double sum = 0.0;
  for (int i = 0; i < k; ++i) {
    weights[i] = gen.next_double() + 1e-3;
    sum += weights[i];
  }
  std::vector<double> entries(static_cast<size_t>(n) * n, 0.0);
  for (int i = 0; i < k; ++i) {
    const Permutation pi = random_permutation(n, gen);
    for (int pos = 1; pos <= n; ++pos) {
      entries[static_cast<size_t>(pi.element_at(pos)) * n + (pos - 1)] +=
          weights[i] / sum;
    }
  }
  return StochasticMatrix(n, std::move(entries));
}

// Sum of r random permutation matrices, one unit each: entries are exact
// multiples of 1/r and the matrix is doubly stochastic in units.
inline GranularMatrix random_granular(int n, int r, SplitMix64& gen) {
  GranularMatrix m(n, r);
  for (int i = 0; i < r; ++i) {
    const Permutation pi = random_permutation(n, gen);
    for (int pos = 1; pos <= n; ++pos) m.add_units(pi.element_at(pos), pos, 1);
  }
  return m;
}

inline Request random_request(int n, int size, SplitMix64& gen) {
  std::vector<ElementId> pool(n);
  for (int i = 0; i < n; ++i) pool[i] = i;
  for (int i = 0; i < size; ++i) {
    const int j = i + static_cast<int>(gen.next_below(n - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(size);
  return Request(std::move(pool));
}

inline Instance random_instance(int n, int T, int rmax, SplitMix64& gen) {
  Instance inst;
  inst.n = n;
  inst.pi0 = random_permutation(n, gen);
  for (int t = 0; t < T; ++t) {
    const int size = 1 + static_cast<int>(gen.next_below(rmax));
    inst.requests.push_back(random_request(n, size, gen));
  }
  return inst;
}

// Exhaustive minimum set cover by subset enumeration; n_elements <= 20.
inline int min_set_cover_size(const SetCoverInstance& sc) {
  const int n = sc.n_elements;
  int best = n + 1;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    const int size = __builtin_popcount(mask);
    if (size >= best) continue;
    bool covers = true;
    for (const auto& set : sc.sets) {
      bool hit = false;
      for (int e : set) {
        if (mask & (1u << e)) {
          hit = true;
          break;
        }
      }
      if (!hit) {
        covers = false;
        break;
      }
    }
    if (covers) best = size;
  }
  return best;
}

// All nonempty requests over [0, n) with at most rmax members.
inline std::vector<Request> all_requests(int n, int rmax) {
  std::vector<Request> out;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    if (__builtin_popcount(mask) > rmax) continue;
    std::vector<ElementId> members;
    for (int e = 0; e < n; ++e) {
      if (mask & (1u << e)) members.push_back(e);
    }
    out.emplace_back(std::move(members));
  }
  return out;
}

// Every instance with the given n and horizon: all request sequences over
// all_requests(n, rmax) crossed with either every initial permutation or
// just the identity.
inline void for_each_instance(int n, int T, int rmax, bool all_pi0,
                              const std::function<void(const Instance&)>& fn) {
  std::vector<Permutation> pi0s;
  if (all_pi0) {
    std::vector<ElementId> base(n);
    for (int i = 0; i < n; ++i) base[i] = i;
    do {
      pi0s.push_back(Permutation(base));
    } while (std::next_permutation(base.begin(), base.end()));
  } else {
    pi0s.push_back(Permutation::identity(n));
  }
  const std::vector<Request> reqs = all_requests(n, rmax);
  const size_t base = reqs.size();
  std::vector<size_t> odo(T, 0);
  for (const Permutation& pi0 : pi0s) {
    std::fill(odo.begin(), odo.end(), 0);
    for (;;) {
      Instance inst;
      inst.n = n;
      inst.pi0 = pi0;
      for (int t = 0; t < T; ++t) inst.requests.push_back(reqs[odo[t]]);
      fn(inst);
      int k = T - 1;
      while (k >= 0 && ++odo[k] == base) {
        odo[k] = 0;
        --k;
      }
      if (k < 0) break;
    }
  }
}

}  // namespace mssc::testing

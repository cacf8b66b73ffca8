#pragma once

// Doubly stochastic matrices whose entries are multiples of 1/r, stored as
// integer unit counts so the greedy LP solver and the fractional Kendall-Tau
// distance can use exact arithmetic.

#include <vector>

#include "mssc/core.hpp"

namespace mssc {

class GranularMatrix {
 public:
  GranularMatrix() = default;
  GranularMatrix(int n, int r);  // zero matrix

  // Permutation as r units on its 0-1 support.
  static GranularMatrix from_permutation(const Permutation& pi, int r);

  int size() const { return n_; }
  int granularity() const { return r_; }

  // pos is 1-indexed; value in [0, r].
  int units(ElementId e, int pos) const { return u_[idx(e, pos)]; }
  void add_units(ElementId e, int pos, int delta) { u_[idx(e, pos)] += delta; }

  long long row_units(ElementId e) const;
  long long column_units(int pos) const;

  // Exact check: every row and column holds exactly r units.
  bool is_doubly_stochastic_units() const;

  StochasticMatrix to_stochastic() const;

  bool operator==(const GranularMatrix&) const = default;

 private:
  size_t idx(ElementId e, int pos) const {
    return static_cast<size_t>(e) * n_ + (pos - 1);
  }

  int n_ = 0;
  int r_ = 1;
  std::vector<int> u_;
};

}  // namespace mssc

#pragma once

// Domain types for Multistage Min-Sum Set Cover: permutations, requests,
// instances, stochastic matrices, solution sequences and cost accounting.
//
// Convention: element ids are dense integers in [0, n). Positions are
// 1-indexed in every public signature; storage is 0-indexed internally.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace mssc {

using ElementId = int;

inline constexpr double kEpsNum = 1e-9;  // entry nonnegativity slack
inline constexpr double kEpsRow = 1e-7;  // marginal (row/column) sum tolerance

// Bijection position <-> element with O(1) lookup both ways.
class Permutation {
 public:
  Permutation() = default;

  // order[k] is the element at position k+1. Throws std::invalid_argument
  // if order is not a bijection on [0, order.size()).
  explicit Permutation(std::vector<ElementId> order);

  static Permutation identity(int n);

  int size() const { return static_cast<int>(fwd_.size()); }

  // Element at position pos, pos in [1, n].
  ElementId element_at(int pos) const { return fwd_[pos - 1]; }

  // Position of element e, in [1, n].
  int position_of(ElementId e) const { return inv_[e] + 1; }

  // 0-indexed position->element array (for iteration and lexicographic order).
  const std::vector<ElementId>& order() const { return fwd_; }

  bool operator==(const Permutation& other) const { return fwd_ == other.fwd_; }
  bool operator!=(const Permutation& other) const { return !(*this == other); }

  // Lexicographic on the position->element array; used for oracle tie-breaks.
  bool operator<(const Permutation& other) const { return fwd_ < other.fwd_; }

 private:
  std::vector<ElementId> fwd_;  // position (0-based) -> element
  std::vector<int> inv_;        // element -> position (0-based)
};

// Nonempty set of elements, stored sorted and deduplicated.
struct Request {
  std::vector<ElementId> members;

  Request() = default;
  explicit Request(std::vector<ElementId> m);

  int size() const { return static_cast<int>(members.size()); }
  bool contains(ElementId e) const;

  bool operator==(const Request&) const = default;
};

struct Instance {
  int n = 0;
  Permutation pi0;
  std::vector<Request> requests;

  int horizon() const { return static_cast<int>(requests.size()); }

  // Largest request cardinality (0 when the horizon is empty).
  int r_bound() const;
};

// Collects every violated invariant; an empty list means the instance is ok.
std::vector<std::string> validate_instance(const Instance& inst);

// Row-stochastic n x n matrix: entry(e, i) is the mass of element e at
// position i. Construction clamps entries in [-kEpsNum, 0) to zero and
// rejects anything more negative or rows whose sum strays from 1.
class StochasticMatrix {
 public:
  StochasticMatrix() = default;
  StochasticMatrix(int n, std::vector<double> row_major);

  static StochasticMatrix from_permutation(const Permutation& pi);

  int size() const { return n_; }

  // pos is 1-indexed.
  double entry(ElementId e, int pos) const { return a_[idx(e, pos)]; }
  double& entry_mut(ElementId e, int pos) { return a_[idx(e, pos)]; }

  std::span<const double> row(ElementId e) const {
    return {a_.data() + static_cast<size_t>(e) * n_, static_cast<size_t>(n_)};
  }

  double row_sum(ElementId e) const;
  double column_sum(int pos) const;

  // Column sums are queried, not enforced: intermediate matrices in the
  // neighboring decomposition legitimately have column sums up to 2.
  bool is_doubly_stochastic(double eps = kEpsRow) const;

  // Argmax per row; exact inverse of from_permutation on 0-1 matrices.
  Permutation to_permutation() const;

  bool operator==(const StochasticMatrix& other) const {
    return n_ == other.n_ && a_ == other.a_;
  }

 private:
  size_t idx(ElementId e, int pos) const {
    return static_cast<size_t>(e) * n_ + (pos - 1);
  }

  int n_ = 0;
  std::vector<double> a_;
};

StochasticMatrix matrix_from_permutation(const Permutation& pi);

// pi^1..pi^T; the instance's pi^0 is implicit round 0.
struct SolutionSequence {
  std::vector<Permutation> perms;

  int rounds() const { return static_cast<int>(perms.size()); }
};

// A^1..A^T from the Fractional-MTF relaxation, plus its moving objective.
struct FractionalSequence {
  std::vector<StochasticMatrix> matrices;
  double objective = 0.0;

  int rounds() const { return static_cast<int>(matrices.size()); }
};

struct CostReport {
  std::vector<long long> covering;  // per-round first-hit positions
  std::vector<long long> moving;    // per-round Kendall-Tau counts
  long long total_covering = 0;
  long long total_moving = 0;
  long long total = 0;

  static CostReport from_rounds(std::vector<long long> covering,
                                std::vector<long long> moving);
};

// Position of the first element of R in pi (1-indexed).
int covering_cost(const Permutation& pi, const Request& r);

// Per-round covering + Kendall-Tau moving costs; throws std::invalid_argument
// when sol does not have exactly inst.horizon() permutations.
CostReport total_cost(const Instance& inst, const SolutionSequence& sol);

}  // namespace mssc

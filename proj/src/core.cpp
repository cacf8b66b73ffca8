#include "mssc/core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mssc/distances.hpp"

namespace mssc {

Permutation::Permutation(std::vector<ElementId> order) : fwd_(std::move(order)) {
  const int n = static_cast<int>(fwd_.size());
  inv_.assign(n, -1);
  for (int p = 0; p < n; ++p) {
    const ElementId e = fwd_[p];
    if (e < 0 || e >= n) {
      throw std::invalid_argument("permutation entry out of range");
    }
    if (inv_[e] != -1) {
      throw std::invalid_argument("permutation is not a bijection");
    }
    inv_[e] = p;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<ElementId> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  return Permutation(std::move(order));
}

Request::Request(std::vector<ElementId> m) : members(std::move(m)) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
}

bool Request::contains(ElementId e) const {
  return std::binary_search(members.begin(), members.end(), e);
}

int Instance::r_bound() const {
  int r = 0;
  for (const auto& req : requests) r = std::max(r, req.size());
  return r;
}

std::vector<std::string> validate_instance(const Instance& inst) {
  std::vector<std::string> violations;
  if (inst.n < 1) violations.push_back("universe size must be positive");
  if (inst.pi0.size() != inst.n) {
    violations.push_back("initial permutation size differs from n");
  }
  // Permutation construction already guarantees bijectivity on its own
  // domain; a mismatched domain is reported above.
  for (size_t t = 0; t < inst.requests.size(); ++t) {
    const Request& req = inst.requests[t];
    if (req.members.empty()) {
      violations.push_back("request " + std::to_string(t + 1) + " is empty");
      continue;
    }
    for (ElementId e : req.members) {
      if (e < 0 || e >= inst.n) {
        violations.push_back("request " + std::to_string(t + 1) +
                             ": element id out of range");
        break;
      }
    }
  }
  return violations;
}

StochasticMatrix::StochasticMatrix(int n, std::vector<double> row_major)
    : n_(n), a_(std::move(row_major)) {
  if (a_.size() != static_cast<size_t>(n) * n) {
    throw std::invalid_argument("matrix data size is not n*n");
  }
  for (double& v : a_) {
    if (v < -kEpsNum) {
      throw std::invalid_argument("matrix entry below -eps_num");
    }
    if (v < 0.0) v = 0.0;
  }
  for (ElementId e = 0; e < n_; ++e) {
    if (std::abs(row_sum(e) - 1.0) > kEpsRow) {
      throw std::invalid_argument("row sum differs from 1 beyond tolerance");
    }
  }
}

StochasticMatrix StochasticMatrix::from_permutation(const Permutation& pi) {
  const int n = pi.size();
  std::vector<double> a(static_cast<size_t>(n) * n, 0.0);
  for (int pos = 1; pos <= n; ++pos) {
    a[static_cast<size_t>(pi.element_at(pos)) * n + (pos - 1)] = 1.0;
  }
  return StochasticMatrix(n, std::move(a));
}

double StochasticMatrix::row_sum(ElementId e) const {
  double s = 0.0;
  for (int pos = 1; pos <= n_; ++pos) s += entry(e, pos);
  return s;
}

double StochasticMatrix::column_sum(int pos) const {
  double s = 0.0;
  for (ElementId e = 0; e < n_; ++e) s += entry(e, pos);
  return s;
}

bool StochasticMatrix::is_doubly_stochastic(double eps) const {
  for (int pos = 1; pos <= n_; ++pos) {
    if (std::abs(column_sum(pos) - 1.0) > eps) return false;
  }
  return true;
}

Permutation StochasticMatrix::to_permutation() const {
  std::vector<ElementId> order(n_, -1);
  std::vector<char> used(n_, 0);
  for (ElementId e = 0; e < n_; ++e) {
    int best_pos = 1;
    for (int pos = 2; pos <= n_; ++pos) {
      if (entry(e, pos) > entry(e, best_pos)) best_pos = pos;
    }
    if (used[best_pos - 1]) {
      throw std::invalid_argument("row argmax positions collide");
    }
    used[best_pos - 1] = 1;
    order[best_pos - 1] = e;
  }
  return Permutation(std::move(order));
}

StochasticMatrix matrix_from_permutation(const Permutation& pi) {
  return StochasticMatrix::from_permutation(pi);
}

CostReport CostReport::from_rounds(std::vector<long long> covering,
                                   std::vector<long long> moving) {
  CostReport rep;
  rep.covering = std::move(covering);
  rep.moving = std::move(moving);
  for (long long c : rep.covering) rep.total_covering += c;
  for (long long m : rep.moving) rep.total_moving += m;
  rep.total = rep.total_covering + rep.total_moving;
  return rep;
}

int covering_cost(const Permutation& pi, const Request& r) {
  int best = pi.size() + 1;
  for (ElementId e : r.members) {
    best = std::min(best, pi.position_of(e));
  }
  return best;
}

CostReport total_cost(const Instance& inst, const SolutionSequence& sol) {
  const int T = inst.horizon();
  if (sol.rounds() != T) {
    throw std::invalid_argument("solution length differs from horizon");
  }
  std::vector<long long> covering(T), moving(T);
  const Permutation* prev = &inst.pi0;
  for (int t = 0; t < T; ++t) {
    covering[t] = covering_cost(sol.perms[t], inst.requests[t]);
    moving[t] = kendall_tau(*prev, sol.perms[t]);
    prev = &sol.perms[t];
  }
  return CostReport::from_rounds(std::move(covering), std::move(moving));
}

}  // namespace mssc

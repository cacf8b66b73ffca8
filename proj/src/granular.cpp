#include "mssc/granular.hpp"

#include <stdexcept>

namespace mssc {

GranularMatrix::GranularMatrix(int n, int r) : n_(n), r_(r) {
  if (n < 1 || r < 1) throw std::invalid_argument("n and r must be positive");
  u_.assign(static_cast<size_t>(n) * n, 0);
}

GranularMatrix GranularMatrix::from_permutation(const Permutation& pi, int r) {
  GranularMatrix m(pi.size(), r);
  for (int pos = 1; pos <= pi.size(); ++pos) {
    m.add_units(pi.element_at(pos), pos, r);
  }
  return m;
}

long long GranularMatrix::row_units(ElementId e) const {
  long long s = 0;
  for (int pos = 1; pos <= n_; ++pos) s += units(e, pos);
  return s;
}

long long GranularMatrix::column_units(int pos) const {
  long long s = 0;
  for (ElementId e = 0; e < n_; ++e) s += units(e, pos);
  return s;
}

bool GranularMatrix::is_doubly_stochastic_units() const {
  for (ElementId e = 0; e < n_; ++e) {
    if (row_units(e) != r_) return false;
  }
  for (int pos = 1; pos <= n_; ++pos) {
    if (column_units(pos) != r_) return false;
  }
  for (int v : u_) {
    if (v < 0) return false;
  }
  return true;
}

StochasticMatrix GranularMatrix::to_stochastic() const {
  std::vector<double> a(u_.size());
  for (size_t k = 0; k < u_.size(); ++k) {
    a[k] = static_cast<double>(u_[k]) / r_;
  }
  return StochasticMatrix(n_, std::move(a));
}

}  // namespace mssc

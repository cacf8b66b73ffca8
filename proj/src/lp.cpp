#include "mssc/lp.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <cmath>
#include <limits>
#include <sstream>

namespace mssc {

namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kZeroTol = 1e-11;

// Dense tableau state for the two-phase method. These LPs (transportation
// marginals everywhere) are heavily degenerate, so besides the true rhs the
// tableau carries a deterministically perturbed copy: the ratio test breaks
// ties with the perturbed column first and only then with Bland's index.
// The reduced-cost termination test does not involve the rhs, so the final
// basis is exactly optimal for the unperturbed problem.
struct Tableau {
  int rows = 0;
  int cols = 0;    // structural + slack + artificial
  int stride = 0;  // cols + rhs + perturbed rhs
  std::vector<double> a;
  std::vector<double> z;  // reduced-cost row, cols + 1 (last = -objective)
  std::vector<int> basis;

  void init(int m, int n_cols) {
    rows = m;
    cols = n_cols;
    stride = n_cols + 2;
    a.assign(static_cast<size_t>(m) * stride, 0.0);
    basis.assign(m, -1);
    // Pseudo-random perturbation in [1, 2); any fixed generic vector works.
    std::uint64_t state = 0x9E3779B97F4A7C15ULL;
    for (int r = 0; r < m; ++r) {
      state ^= state << 13;
      state ^= state >> 7;
      state ^= state << 17;
      row(r)[cols + 1] = 1.0 + static_cast<double>(state >> 11) * 0x1.0p-53;
    }
  }

  double* row(int r) { return a.data() + static_cast<size_t>(r) * stride; }
  const double* row(int r) const {
    return a.data() + static_cast<size_t>(r) * stride;
  }

  void pivot(int pr, int pc) {
    double* prow = row(pr);
    const double piv = prow[pc];
    for (int c = 0; c < stride; ++c) prow[c] /= piv;
    prow[pc] = 1.0;
    for (int r = 0; r < rows; ++r) {
      if (r == pr) continue;
      double* rr = row(r);
      const double factor = rr[pc];
      if (std::abs(factor) <= kZeroTol) {
        rr[pc] = 0.0;
        continue;
      }
      for (int c = 0; c < stride; ++c) rr[c] -= factor * prow[c];
      rr[pc] = 0.0;
    }
    const double zf = z[pc];
    if (std::abs(zf) > kZeroTol) {
      for (int c = 0; c <= cols; ++c) z[c] -= zf * prow[c];
    }
    z[pc] = 0.0;
    basis[pr] = pc;
  }

  // Rebuilds the reduced-cost row for cost vector c (length cols).
  void price_out(const std::vector<double>& cost) {
    z.assign(cost.begin(), cost.end());
    z.push_back(0.0);
    for (int r = 0; r < rows; ++r) {
      const double cb = cost[basis[r]];
      if (std::abs(cb) <= kZeroTol) continue;
      const double* rr = row(r);
      for (int c = 0; c <= cols; ++c) z[c] -= cb * rr[c];
    }
  }
};

enum class PhaseResult { Done, Unbounded, IterationCap };

// Minimizes the priced-out cost row. allowed_cols limits entering columns
// (used to keep artificials out in phase 2). Dantzig pricing, with Bland's
// smallest-index rule as the anti-cycling fallback during long degenerate
// stretches; the perturbed ratio test makes that fallback a rarity.
PhaseResult run_phase(Tableau& t, int allowed_cols, long long& pivots_left) {
  constexpr int kBlandTrigger = 256;
  const bool trace = std::getenv("MSSC_LP_TRACE") != nullptr;
  long long iter = 0;
  int degenerate_streak = 0;
  while (true) {
    if (trace && ++iter % 1000 == 0) {
      std::fprintf(stderr, "  pivot %lld obj %.9g streak %d\n", iter,
                   -t.z[t.cols], degenerate_streak);
    }
    int entering = -1;
    if (degenerate_streak < kBlandTrigger) {
      double best = -kPivotTol;
      for (int c = 0; c < allowed_cols; ++c) {
        if (t.z[c] < best) {
          best = t.z[c];
          entering = c;
        }
      }
    } else {
      for (int c = 0; c < allowed_cols; ++c) {
        if (t.z[c] < -kPivotTol) {
          entering = c;
          break;
        }
      }
    }
    if (entering < 0) return PhaseResult::Done;
    if (pivots_left-- <= 0) return PhaseResult::IterationCap;

    // Ratio test with a stability floor on the pivot element: Gauss-Jordan
    // error compounds over thousands of pivots, and dividing by near-zero
    // entries is what lets it explode. Ties on the true ratio fall through
    // to the perturbed ratio, then to the larger pivot magnitude.
    const auto ratio_test = [&](double admit) {
      int leave = -1;
      double best_ratio = std::numeric_limits<double>::infinity();
      double best_pratio = std::numeric_limits<double>::infinity();
      double best_arc = 0.0;
      for (int r = 0; r < t.rows; ++r) {
        const double* rr = t.row(r);
        const double arc = rr[entering];
        if (arc <= admit) continue;
        const double ratio = std::max(rr[t.cols], 0.0) / arc;
        if (ratio > best_ratio + kZeroTol) continue;
        const double pratio = rr[t.cols + 1] / arc;
        if (ratio < best_ratio - kZeroTol || pratio < best_pratio - kZeroTol ||
            (pratio < best_pratio + kZeroTol && arc > best_arc)) {
          best_ratio = std::min(ratio, best_ratio);
          best_pratio = pratio;
          best_arc = arc;
          leave = r;
        }
      }
      return std::pair<int, double>(leave, best_ratio);
    };
    auto [leave, best_ratio] = ratio_test(1e-7);
    if (leave < 0) std::tie(leave, best_ratio) = ratio_test(kPivotTol);
    if (leave < 0) return PhaseResult::Unbounded;
    if (best_ratio > kZeroTol) {
      degenerate_streak = 0;
    } else {
      ++degenerate_streak;
    }
    t.pivot(leave, entering);
  }
}

}  // namespace

LpSolution simplex_solve(const LinearProgram& lp) {
  const int ns = lp.num_vars();
  const int m = static_cast<int>(lp.constraints.size());

  // Column layout: structural | slack/surplus | artificial.
  int n_slack = 0;
  for (const Constraint& c : lp.constraints) {
    if (c.rel != Relation::Eq) ++n_slack;
  }
  const int slack_base = ns;
  const int art_base = ns + n_slack;
  const int total_cols = art_base + m;  // at most one artificial per row

  Tableau t;
  t.init(m, total_cols);

  int slack_at = slack_base;
  int art_at = art_base;
  int n_art = 0;
  for (int r = 0; r < m; ++r) {
    const Constraint& c = lp.constraints[r];
    double* rr = t.row(r);
    const double sign = c.rhs < 0.0 ? -1.0 : 1.0;
    for (const auto& [v, coef] : c.terms) rr[v] += sign * coef;
    rr[total_cols] = sign * c.rhs;
    Relation rel = c.rel;
    if (sign < 0.0) {
      if (rel == Relation::Ge) {
        rel = Relation::Le;
      } else if (rel == Relation::Le) {
        rel = Relation::Ge;
      }
    }
    if (rel == Relation::Le) {
      rr[slack_at] = 1.0;
      t.basis[r] = slack_at++;
    } else if (rel == Relation::Ge) {
      rr[slack_at++] = -1.0;
    }
    if (t.basis[r] < 0) {  // Eq and Ge rows start on an artificial
      rr[art_at] = 1.0;
      t.basis[r] = art_at++;
      ++n_art;
    }
  }

  LpSolution out;
  long long pivots_left = 50LL * std::max(ns, 1);

  // Phase 1: minimize the sum of artificials.
  if (n_art > 0) {
    std::vector<double> phase1(total_cols, 0.0);
    for (int c = art_base; c < art_at; ++c) phase1[c] = 1.0;
    t.price_out(phase1);
    const PhaseResult res = run_phase(t, total_cols, pivots_left);
    if (res == PhaseResult::IterationCap) {
      out.status = LpStatus::Stalled;
      return out;
    }
    const double infeas = -t.z[total_cols];
    if (infeas > kEpsLp) {
      out.status = LpStatus::Infeasible;
      return out;
    }
    // Drive leftover artificials out of the basis; all-zero rows are
    // redundant and harmless to leave in place with a zero-level artificial.
    for (int r = 0; r < m; ++r) {
      if (t.basis[r] < art_base) continue;
      const double* rr = t.row(r);
      for (int c = 0; c < art_base; ++c) {
        if (std::abs(rr[c]) > kEpsLp) {
          t.pivot(r, c);
          break;
        }
      }
    }
  }

  // Phase 2 over the real objective; artificial columns may not re-enter.
  std::vector<double> phase2(total_cols, 0.0);
  for (int c = 0; c < ns; ++c) phase2[c] = lp.objective[c];
  t.price_out(phase2);
  const PhaseResult res = run_phase(t, art_base, pivots_left);
  if (res == PhaseResult::IterationCap) {
    out.status = LpStatus::Stalled;
    return out;
  }
  if (res == PhaseResult::Unbounded) {
    out.status = LpStatus::Unbounded;
    return out;
  }

  out.values.assign(ns, 0.0);
  for (int r = 0; r < m; ++r) {
    if (t.basis[r] < ns) out.values[t.basis[r]] = t.row(r)[total_cols];
  }
  out.objective_value = 0.0;
  for (int c = 0; c < ns; ++c) {
    out.objective_value += lp.objective[c] * out.values[c];
  }

  // Feasibility audit before declaring optimality.
  for (double v : out.values) {
    if (v < -kEpsLp) {
      out.status = LpStatus::Stalled;
      return out;
    }
  }
  for (const Constraint& c : lp.constraints) {
    double lhs = 0.0;
    for (const auto& [v, coef] : c.terms) lhs += coef * out.values[v];
    const double gap = lhs - c.rhs;
    const bool ok = (c.rel == Relation::Eq && std::abs(gap) <= kEpsLp) ||
                    (c.rel == Relation::Ge && gap >= -kEpsLp) ||
                    (c.rel == Relation::Le && gap <= kEpsLp);
    if (!ok) {
      out.status = LpStatus::Stalled;
      return out;
    }
  }
  out.status = LpStatus::Optimal;
  return out;
}

std::string var_name(const VarTag& tag) {
  std::ostringstream os;
  if (tag.kind == VarKind::Mass) {
    os << "A[" << tag.t << "][" << tag.e << "][" << tag.i << "]";
  } else {
    os << "f[" << tag.t << "][" << tag.e << "][" << tag.i << "][" << tag.j
       << "]";
  }
  return os.str();
}

std::string lp_to_text(const LinearProgram& lp) {
  std::ostringstream os;
  os << "min:";
  for (int v = 0; v < lp.num_vars(); ++v) {
    if (lp.objective[v] != 0.0) {
      os << " + " << lp.objective[v] << " " << var_name(lp.tags[v]);
    }
  }
  os << "\n";
  for (size_t r = 0; r < lp.constraints.size(); ++r) {
    const Constraint& c = lp.constraints[r];
    os << (c.label.empty() ? "c" + std::to_string(r) : c.label) << ":";
    for (const auto& [v, coef] : c.terms) {
      os << " + " << coef << " " << var_name(lp.tags[v]);
    }
    os << (c.rel == Relation::Eq ? " = " : c.rel == Relation::Ge ? " >= " : " <= ");
    os << c.rhs << "\n";
  }
  os << "bounds: all variables >= 0\n";
  return os.str();
}

LinearProgram build_footrule_lp(const StochasticMatrix& a,
                                const StochasticMatrix& b) {
  if (a.size() != b.size()) throw std::invalid_argument("size mismatch");
  const int n = a.size();
  LinearProgram lp;
  lp.objective.reserve(static_cast<size_t>(n) * n * n);
  lp.tags.reserve(lp.objective.capacity());
  auto fidx = [n](ElementId e, int i, int j) {
    return (static_cast<int>(e) * n + (i - 1)) * n + (j - 1);
  };
  for (ElementId e = 0; e < n; ++e) {
    for (int i = 1; i <= n; ++i) {
      for (int j = 1; j <= n; ++j) {
        lp.objective.push_back(std::abs(i - j));
        lp.tags.push_back({VarKind::Flow, 0, e, i, j});
      }
    }
  }
  for (ElementId e = 0; e < n; ++e) {
    for (int i = 1; i <= n; ++i) {
      Constraint c;
      c.rel = Relation::Eq;
      c.rhs = a.entry(e, i);
      for (int j = 1; j <= n; ++j) c.terms.push_back({fidx(e, i, j), 1.0});
      c.label = "src[" + std::to_string(e) + "][" + std::to_string(i) + "]";
      lp.constraints.push_back(std::move(c));
    }
  }
  for (ElementId e = 0; e < n; ++e) {
    for (int j = 1; j <= n; ++j) {
      Constraint c;
      c.rel = Relation::Eq;
      c.rhs = b.entry(e, j);
      for (int i = 1; i <= n; ++i) c.terms.push_back({fidx(e, i, j), 1.0});
      c.label = "dst[" + std::to_string(e) + "][" + std::to_string(j) + "]";
      lp.constraints.push_back(std::move(c));
    }
  }
  return lp;
}

int MtfLp::mass_index(int t, ElementId e, int pos) const {
  const long long base = static_cast<long long>(t - 1) * (n * n + n * n * n);
  return static_cast<int>(base + static_cast<long long>(e) * n + (pos - 1));
}

int MtfLp::flow_index(int t, ElementId e, int i, int j) const {
  const long long base = static_cast<long long>(t - 1) * (n * n + n * n * n);
  return static_cast<int>(base + static_cast<long long>(n) * n +
                          (static_cast<long long>(e) * n + (i - 1)) * n +
                          (j - 1));
}

namespace {

// Shared body of the two MTF-style builders. The request constraint is the
// only difference: full unit mass over R_t (equality) versus at least 1/r on
// the single chosen element.
MtfLp build_mtf_lp(const Permutation& pi0,
                   const std::vector<Request>* requests,
                   const std::vector<ElementId>* chosen, int r) {
  MtfLp built;
  built.n = pi0.size();
  built.T = static_cast<int>(requests ? requests->size() : chosen->size());
  const int n = built.n;
  const int T = built.T;

  LinearProgram& lp = built.lp;
  const long long vars = static_cast<long long>(T) * (n * n + n * n * n);
  lp.objective.assign(vars, 0.0);
  lp.tags.resize(vars);
  for (int t = 1; t <= T; ++t) {
    for (ElementId e = 0; e < n; ++e) {
      for (int i = 1; i <= n; ++i) {
        lp.tags[built.mass_index(t, e, i)] = {VarKind::Mass, t, e, i, -1};
        for (int j = 1; j <= n; ++j) {
          const int v = built.flow_index(t, e, i, j);
          lp.tags[v] = {VarKind::Flow, t, e, i, j};
          lp.objective[v] = std::abs(i - j);
        }
      }
    }
  }

  for (int t = 1; t <= T; ++t) {
    for (ElementId e = 0; e < n; ++e) {
      Constraint c;
      c.rhs = 1.0;
      for (int i = 1; i <= n; ++i) {
        c.terms.push_back({built.mass_index(t, e, i), 1.0});
      }
      c.label = "row[" + std::to_string(t) + "][" + std::to_string(e) + "]";
      lp.constraints.push_back(std::move(c));
    }
    for (int i = 1; i <= n; ++i) {
      Constraint c;
      c.rhs = 1.0;
      for (ElementId e = 0; e < n; ++e) {
        c.terms.push_back({built.mass_index(t, e, i), 1.0});
      }
      c.label = "col[" + std::to_string(t) + "][" + std::to_string(i) + "]";
      lp.constraints.push_back(std::move(c));
    }
    {
      Constraint c;
      if (requests) {
        c.rel = Relation::Eq;
        c.rhs = 1.0;
        for (ElementId e : (*requests)[t - 1].members) {
          c.terms.push_back({built.mass_index(t, e, 1), 1.0});
        }
      } else {
        c.rel = Relation::Ge;
        c.rhs = 1.0 / r;
        c.terms.push_back({built.mass_index(t, (*chosen)[t - 1], 1), 1.0});
      }
      c.label = "front[" + std::to_string(t) + "]";
      lp.constraints.push_back(std::move(c));
    }
    // Flow marginals: sources tie f[t] to A^{t-1} (constants at t = 1),
    // sinks tie f[t] to A^t.
    for (ElementId e = 0; e < n; ++e) {
      for (int i = 1; i <= n; ++i) {
        Constraint c;
        for (int j = 1; j <= n; ++j) {
          c.terms.push_back({built.flow_index(t, e, i, j), 1.0});
        }
        if (t == 1) {
          c.rhs = pi0.position_of(e) == i ? 1.0 : 0.0;
        } else {
          c.rhs = 0.0;
          c.terms.push_back({built.mass_index(t - 1, e, i), -1.0});
        }
        c.label = "flowsrc[" + std::to_string(t) + "][" + std::to_string(e) +
                  "][" + std::to_string(i) + "]";
        lp.constraints.push_back(std::move(c));
      }
    }
    for (ElementId e = 0; e < n; ++e) {
      for (int j = 1; j <= n; ++j) {
        Constraint c;
        c.rhs = 0.0;
        for (int i = 1; i <= n; ++i) {
          c.terms.push_back({built.flow_index(t, e, i, j), 1.0});
        }
        c.terms.push_back({built.mass_index(t, e, j), -1.0});
        c.label = "flowdst[" + std::to_string(t) + "][" + std::to_string(e) +
                  "][" + std::to_string(j) + "]";
        lp.constraints.push_back(std::move(c));
      }
    }
  }
  return built;
}

}  // namespace

MtfLp build_fractional_mtf(const Instance& inst) {
  const auto violations = validate_instance(inst);
  if (!violations.empty()) {
    throw std::invalid_argument("invalid instance: " + violations.front());
  }
  return build_mtf_lp(inst.pi0, &inst.requests, nullptr, 0);
}

MtfLp build_first_position_lp(const Permutation& pi0,
                              const std::vector<ElementId>& chosen, int r) {
  if (r < 1) throw std::invalid_argument("r must be >= 1");
  for (ElementId e : chosen) {
    if (e < 0 || e >= pi0.size()) {
      throw std::invalid_argument("chosen element out of range");
    }
  }
  return build_mtf_lp(pi0, nullptr, &chosen, r);
}

FractionalSequence extract_fractional_sequence(const MtfLp& built,
                                               const LpSolution& sol) {
  FractionalSequence seq;
  seq.objective = sol.objective_value;
  seq.matrices.reserve(built.T);
  for (int t = 1; t <= built.T; ++t) {
    std::vector<double> entries(static_cast<size_t>(built.n) * built.n);
    for (ElementId e = 0; e < built.n; ++e) {
      for (int i = 1; i <= built.n; ++i) {
        entries[static_cast<size_t>(e) * built.n + (i - 1)] =
            std::max(0.0, sol.values[built.mass_index(t, e, i)]);
      }
    }
    seq.matrices.emplace_back(built.n, std::move(entries));
  }
  return seq;
}

FractionalSequence solve_fractional_mtf(const Instance& inst) {
  const MtfLp built = build_fractional_mtf(inst);
  const LpSolution sol = simplex_solve(built.lp);
  if (sol.status == LpStatus::Stalled) {
    throw SolverStalled("simplex stalled on Fractional-MTF");
  }
  if (sol.status != LpStatus::Optimal) {
    // A valid instance always admits a feasible point (move any requested
    // element's full mass to the front each round).
    throw std::runtime_error("Fractional-MTF unexpectedly not optimal");
  }
  FractionalSequence seq = extract_fractional_sequence(built, sol);
  for (int t = 0; t < seq.rounds(); ++t) {
    if (!seq.matrices[t].is_doubly_stochastic()) {
      throw std::runtime_error("extracted matrix is not doubly stochastic");
    }
  }
  return seq;
}

}  // namespace mssc

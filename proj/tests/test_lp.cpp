#include <doctest.h>

#include <cmath>
#include <cstring>

#include "mssc/distances.hpp"
#include "mssc/exact.hpp"
#include "mssc/lp.hpp"
#include "mssc/rounding.hpp"
#include "oracles.hpp"

using namespace mssc;

namespace {

LinearProgram tiny_lp(std::vector<double> objective,
                      std::vector<Constraint> constraints) {
  LinearProgram lp;
  lp.objective = std::move(objective);
  lp.constraints = std::move(constraints);
  for (int v = 0; v < lp.num_vars(); ++v) {
    lp.tags.push_back({VarKind::Mass, 0, v, 0, -1});
  }
  return lp;
}

}  // namespace

TEST_CASE("simplex: minimize x subject to x >= 3") {
  const auto lp = tiny_lp({1.0}, {{{{0, 1.0}}, Relation::Ge, 3.0, ""}});
  const LpSolution sol = simplex_solve(lp);
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(std::abs(sol.values[0] - 3.0) <= 1e-9);
  CHECK(std::abs(sol.objective_value - 3.0) <= 1e-9);
}

TEST_CASE("simplex: infeasible and unbounded are reported as such") {
  const auto infeasible = tiny_lp({1.0}, {{{{0, 1.0}}, Relation::Ge, 3.0, ""},
                                          {{{0, 1.0}}, Relation::Le, 1.0, ""}});
  CHECK(simplex_solve(infeasible).status == LpStatus::Infeasible);

  const auto unbounded = tiny_lp({-1.0}, {{{{0, 1.0}}, Relation::Ge, 0.0, ""}});
  CHECK(simplex_solve(unbounded).status == LpStatus::Unbounded);
}

TEST_CASE("simplex: equality system with negative rhs rows") {
  // x + y = 2, x - y = -1 -> x = 0.5, y = 1.5; minimize x + 2y.
  const auto lp = tiny_lp({1.0, 2.0},
                          {{{{0, 1.0}, {1, 1.0}}, Relation::Eq, 2.0, ""},
                           {{{0, 1.0}, {1, -1.0}}, Relation::Eq, -1.0, ""}});
  const LpSolution sol = simplex_solve(lp);
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(std::abs(sol.values[0] - 0.5) <= 1e-9);
  CHECK(std::abs(sol.values[1] - 1.5) <= 1e-9);
}

TEST_CASE("simplex solves the known 3x3 transportation LP to 2") {
  const StochasticMatrix a = matrix_from_permutation(Permutation::identity(3));
  const StochasticMatrix b(3, {1.0 / 3, 1.0 / 3, 1.0 / 3,  //
                               0.5, 0.5, 0.0,              //
                               0.25, 0.0, 0.75});
  const LpSolution sol = simplex_solve(build_footrule_lp(a, b));
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(std::abs(sol.objective_value - 2.0) <= 1e-9);
}

TEST_CASE("simplex is deterministic bit for bit") {
  SplitMix64 gen(211);
  const Instance inst = testing::random_instance(3, 3, 2, gen);
  const MtfLp built = build_fractional_mtf(inst);
  const LpSolution s1 = simplex_solve(built.lp);
  const LpSolution s2 = simplex_solve(built.lp);
  REQUIRE(s1.status == LpStatus::Optimal);
  REQUIRE(s1.values.size() == s2.values.size());
  CHECK(std::memcmp(s1.values.data(), s2.values.data(),
                    s1.values.size() * sizeof(double)) == 0);
  CHECK(s1.objective_value == s2.objective_value);
}

TEST_CASE("optimal solutions satisfy every constraint within eps_lp") {
  SplitMix64 gen(223);
  for (int rep = 0; rep < 5; ++rep) {
    const Instance inst = testing::random_instance(3, 2, 3, gen);
    const MtfLp built = build_fractional_mtf(inst);
    const LpSolution sol = simplex_solve(built.lp);
    REQUIRE(sol.status == LpStatus::Optimal);
    for (const Constraint& c : built.lp.constraints) {
      double lhs = 0.0;
      for (const auto& [v, coef] : c.terms) lhs += coef * sol.values[v];
      if (c.rel == Relation::Eq) {
        CHECK(std::abs(lhs - c.rhs) <= kEpsLp);
      } else if (c.rel == Relation::Ge) {
        CHECK(lhs >= c.rhs - kEpsLp);
      } else {
        CHECK(lhs <= c.rhs + kEpsLp);
      }
    }
    for (double v : sol.values) CHECK(v >= -kEpsLp);
  }
}

TEST_CASE("fractional MTF builder: variable count and tag round-trip") {
  SplitMix64 gen(227);
  const Instance inst = testing::random_instance(3, 2, 2, gen);
  const MtfLp built = build_fractional_mtf(inst);
  const int n = 3, T = 2;
  CHECK(built.lp.num_vars() == n * n * T + n * n * n * T);

  // Tags are unique and decode back to the index they were built at.
  for (int t = 1; t <= T; ++t) {
    for (ElementId e = 0; e < n; ++e) {
      for (int i = 1; i <= n; ++i) {
        const VarTag& mass = built.lp.tags[built.mass_index(t, e, i)];
        CHECK(mass.kind == VarKind::Mass);
        CHECK(mass.t == t);
        CHECK(mass.e == e);
        CHECK(mass.i == i);
        for (int j = 1; j <= n; ++j) {
          const VarTag& flow = built.lp.tags[built.flow_index(t, e, i, j)];
          CHECK(flow.kind == VarKind::Flow);
          CHECK((flow.t == t && flow.e == e && flow.i == i && flow.j == j));
        }
      }
    }
  }
  // Row-sum constraint arity matches n.
  CHECK(built.lp.constraints.front().terms.size() == static_cast<size_t>(n));
}

TEST_CASE("fractional MTF: request already in front costs nothing") {
  Instance inst;
  inst.n = 3;
  inst.pi0 = Permutation({2, 0, 1});
  inst.requests = {Request({2})};
  const FractionalSequence seq = solve_fractional_mtf(inst);
  CHECK(std::abs(seq.objective) <= 1e-9);
  for (ElementId e = 0; e < 3; ++e) {
    for (int pos = 1; pos <= 3; ++pos) {
      CHECK(std::abs(seq.matrices[0].entry(e, pos) -
                     matrix_from_permutation(inst.pi0).entry(e, pos)) <= 1e-7);
    }
  }
}

TEST_CASE("fractional MTF on the two-element swap: grid oracle value 2") {
  // One scalar s = A[b][1] parameterizes all feasible 2x2 matrices; the
  // request constraint forces s = 1 and d_FR = 2s, so the optimum is 2.
  double oracle = 1e30;
  const int grid = 100000;
  for (int k = 0; k <= grid; ++k) {
    const double s = static_cast<double>(k) / grid;
    if (std::abs(s - 1.0) > 1e-12) continue;  // sum_{e in R} A[e][1] = 1
    oracle = std::min(oracle, 2.0 * s);
  }
  REQUIRE(oracle == 2.0);

  Instance inst;
  inst.n = 2;
  inst.pi0 = Permutation({0, 1});
  inst.requests = {Request({1})};
  const FractionalSequence seq = solve_fractional_mtf(inst);
  CHECK(std::abs(seq.objective - oracle) <= 1e-6);
}

TEST_CASE("first-position LP on the two-element example: grid oracle value 1") {
  // Same parameterization with the constraint relaxed to s >= 1/2.
  double oracle = 1e30;
  const int grid = 100000;
  for (int k = 0; k <= grid; ++k) {
    const double s = static_cast<double>(k) / grid;
    if (s < 0.5) continue;
    oracle = std::min(oracle, 2.0 * s);
  }
  REQUIRE(oracle == 1.0);

  const MtfLp built =
      build_first_position_lp(Permutation({0, 1}), {ElementId(1)}, 2);
  const LpSolution sol = simplex_solve(built.lp);
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(std::abs(sol.objective_value - oracle) <= 1e-6);
}

TEST_CASE("first-position LP: chosen element already first costs nothing") {
  const Permutation pi0({1, 0, 2});
  const MtfLp built = build_first_position_lp(pi0, {1, 1, 1}, 3);
  const LpSolution sol = simplex_solve(built.lp);
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(std::abs(sol.objective_value) <= 1e-9);
}

TEST_CASE("repeated singleton requests add no cost after the first round") {
  Instance inst;
  inst.n = 4;
  inst.pi0 = Permutation({3, 1, 0, 2});
  inst.requests.assign(3, Request({2}));
  const FractionalSequence seq = solve_fractional_mtf(inst);
  const StochasticMatrix pi0m = matrix_from_permutation(inst.pi0);
  CHECK(std::abs(seq.objective - footrule_matrix(pi0m, seq.matrices[0])) <=
        1e-6);
  for (int t = 1; t < 3; ++t) {
    CHECK(footrule_matrix(seq.matrices[t - 1], seq.matrices[t]) <= 1e-6);
  }
}

TEST_CASE("relaxation chain on small random instances") {
  SplitMix64 gen(229);
  for (int rep = 0; rep < 4; ++rep) {
    const Instance inst = testing::random_instance(3, 3, 2, gen);
    const FractionalSequence seq = solve_fractional_mtf(inst);
    const auto opt = brute_force_opt(inst);

    // Feasible point built by hand: move the optimal
    // solution's covering element to the front each round.
    Permutation cur = inst.pi0;
    double mtf_cost = 0.0;
    for (int t = 0; t < inst.horizon(); ++t) {
      ElementId cover = -1;
      int best_pos = inst.n + 1;
      for (ElementId e : inst.requests[t].members) {
        if (opt.sol.perms[t].position_of(e) < best_pos) {
          best_pos = opt.sol.perms[t].position_of(e);
          cover = e;
        }
      }
      const auto moved = move_to_front(cur, cover);
      mtf_cost += 2.0 * moved.second;  // FootRule cost of an MTF move
      cur = moved.first;
    }
    CHECK(seq.objective <= mtf_cost + 1e-6);
    CHECK(seq.objective <= 4.0 * opt.report.total + 1e-6);

    // The fractional objective equals the telescoped FootRule distance of
    // its own matrices.
    double telescoped = 0.0;
    StochasticMatrix prev = matrix_from_permutation(inst.pi0);
    for (int t = 0; t < seq.rounds(); ++t) {
      telescoped += footrule_matrix(prev, seq.matrices[t]);
      prev = seq.matrices[t];
    }
    CHECK(std::abs(telescoped - seq.objective) <= 1e-6);
  }
}

TEST_CASE("lp_to_text dumps objective, one constraint per line, bounds") {
  const auto lp = tiny_lp({1.0}, {{{{0, 1.0}}, Relation::Ge, 3.0, "lo"}});
  const std::string text = lp_to_text(lp);
  CHECK(text.find("min:") != std::string::npos);
  CHECK(text.find("lo:") != std::string::npos);
  CHECK(text.find(">= 3") != std::string::npos);
  CHECK(text.find("bounds: all variables >= 0") != std::string::npos);
  const MtfLp built =
      build_first_position_lp(Permutation({0, 1}), {ElementId(1)}, 2);
  const std::string big = lp_to_text(built.lp);
  // One line per constraint plus objective and bounds.
  CHECK(std::count(big.begin(), big.end(), '\n') ==
        static_cast<long>(built.lp.constraints.size()) + 2);
}

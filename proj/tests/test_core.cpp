#include <doctest.h>

#include "mssc/core.hpp"
#include "mssc/distances.hpp"
#include "mssc/rng.hpp"
#include "oracles.hpp"

using namespace mssc;

TEST_CASE("splitmix64 matches the published reference stream") {
  SplitMix64 gen(1234567);
  CHECK(gen.next() == 6457827717110365317ULL);
  CHECK(gen.next() == 3203168211198807973ULL);
  CHECK(gen.next() == 9817491932198370423ULL);

  SplitMix64 zero(0);
  CHECK(zero.next() == 16294208416658607535ULL);
  CHECK(zero.next() == 7960286522194355700ULL);

  // Doubles are (next() >> 11) * 2^-53; frozen from an independent
  // implementation.
  SplitMix64 g42(42);
  CHECK(g42.next_double() == 0.74156487877182331);
  CHECK(g42.next_double() == 0.1599103928769201);
  CHECK(g42.next_double() == 0.27860113025513866);
}

TEST_CASE("splitmix64 bounded draws are in range and deterministic") {
  SplitMix64 a(7), b(7);
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next_below(13);
    CHECK(x < 13);
    CHECK(x == b.next_below(13));
  }
}

TEST_CASE("permutation construction and lookups") {
  const Permutation pi({2, 0, 1});
  CHECK(pi.size() == 3);
  CHECK(pi.element_at(1) == 2);
  CHECK(pi.element_at(3) == 1);
  CHECK(pi.position_of(2) == 1);
  CHECK(pi.position_of(1) == 3);
  for (ElementId e = 0; e < 3; ++e) {
    CHECK(pi.element_at(pi.position_of(e)) == e);
  }
  CHECK_THROWS_AS(Permutation({0, 0, 2}), std::invalid_argument);
  CHECK_THROWS_AS(Permutation({0, 5}), std::invalid_argument);
  CHECK(Permutation::identity(4).position_of(2) == 3);
}

TEST_CASE("validate_instance reports each violation") {
  Instance ok;
  ok.n = 3;
  ok.pi0 = Permutation({0, 1, 2});
  ok.requests = {Request({1})};
  CHECK(validate_instance(ok).empty());

  Instance bad_id;
  bad_id.n = 2;
  bad_id.pi0 = Permutation::identity(2);
  bad_id.requests = {Request({5})};
  const auto v1 = validate_instance(bad_id);
  REQUIRE(v1.size() == 1);
  CHECK(v1[0].find("out of range") != std::string::npos);

  // A non-bijective pi0 cannot even be constructed; the instance-level
  // check catches a domain mismatch instead.
  Instance bad_pi;
  bad_pi.n = 3;
  bad_pi.pi0 = Permutation::identity(2);
  bad_pi.requests = {Request({0})};
  const auto v2 = validate_instance(bad_pi);
  REQUIRE(v2.size() == 1);
  CHECK(v2[0].find("differs from n") != std::string::npos);

  Instance empty_req;
  empty_req.n = 2;
  empty_req.pi0 = Permutation::identity(2);
  empty_req.requests = {Request(std::vector<ElementId>{})};
  CHECK_FALSE(validate_instance(empty_req).empty());
}

TEST_CASE("covering_cost is the first hit position") {
  const Permutation pi({0, 1, 2});  // a b c
  CHECK(covering_cost(pi, Request({2})) == 3);
  CHECK(covering_cost(pi, Request({0, 2})) == 1);
  CHECK(covering_cost(Permutation({1, 2, 0}), Request({0})) == 3);
}

TEST_CASE("covering the full universe always costs 1") {
  SplitMix64 gen(11);
  for (int n = 1; n <= 6; ++n) {
    std::vector<ElementId> all(n);
    for (int i = 0; i < n; ++i) all[i] = i;
    const Request universe(std::move(all));
    for (int rep = 0; rep < 10; ++rep) {
      CHECK(covering_cost(testing::random_permutation(n, gen), universe) == 1);
    }
  }
}

TEST_CASE("total_cost on the two-element swap example") {
  Instance inst;
  inst.n = 2;
  inst.pi0 = Permutation({0, 1});
  inst.requests = {Request({1})};
  SolutionSequence sol;
  sol.perms = {Permutation({1, 0})};
  const CostReport rep = total_cost(inst, sol);
  CHECK(rep.total_covering == 1);
  CHECK(rep.total_moving == 1);
  CHECK(rep.total == 2);
}

TEST_CASE("static solutions never pay moving cost") {
  SplitMix64 gen(3);
  const Instance inst = testing::random_instance(5, 4, 3, gen);
  SolutionSequence sol;
  sol.perms.assign(4, inst.pi0);
  CHECK(total_cost(inst, sol).total_moving == 0);
}

TEST_CASE("total_cost equals independently recomputed per-round sums") {
  SplitMix64 gen(17);
  const Instance inst = testing::random_instance(4, 3, 4, gen);
  SolutionSequence sol;
  for (int t = 0; t < 3; ++t) {
    sol.perms.push_back(testing::random_permutation(4, gen));
  }
  const CostReport rep = total_cost(inst, sol);
  long long covering = 0, moving = 0;
  const Permutation* prev = &inst.pi0;
  for (int t = 0; t < 3; ++t) {
    covering += covering_cost(sol.perms[t], inst.requests[t]);
    moving += kendall_tau(*prev, sol.perms[t]);
    prev = &sol.perms[t];
  }
  CHECK(rep.total_covering == covering);
  CHECK(rep.total_moving == moving);
  CHECK(rep.total == covering + moving);
}

TEST_CASE("total_cost is additive across horizon splits") {
  SplitMix64 gen(23);
  const Instance inst = testing::random_instance(5, 6, 3, gen);
  SolutionSequence sol;
  for (int t = 0; t < 6; ++t) {
    sol.perms.push_back(testing::random_permutation(5, gen));
  }
  const CostReport whole = total_cost(inst, sol);
  for (int split = 1; split < 6; ++split) {
    Instance head = inst;
    head.requests.assign(inst.requests.begin(), inst.requests.begin() + split);
    Instance tail = inst;
    tail.pi0 = sol.perms[split - 1];
    tail.requests.assign(inst.requests.begin() + split, inst.requests.end());
    SolutionSequence sol_head, sol_tail;
    sol_head.perms.assign(sol.perms.begin(), sol.perms.begin() + split);
    sol_tail.perms.assign(sol.perms.begin() + split, sol.perms.end());
    const CostReport a = total_cost(head, sol_head);
    const CostReport b = total_cost(tail, sol_tail);
    CHECK(whole.total == a.total + b.total);
    CHECK(whole.total_moving == a.total_moving + b.total_moving);
  }
}

TEST_CASE("total_cost rejects length mismatches") {
  Instance inst;
  inst.n = 2;
  inst.pi0 = Permutation::identity(2);
  inst.requests = {Request({0}), Request({1})};
  SolutionSequence sol;
  sol.perms = {Permutation::identity(2)};
  CHECK_THROWS_AS(total_cost(inst, sol), std::invalid_argument);
}

TEST_CASE("matrix_from_permutation round-trips and is 0-1 doubly stochastic") {
  const StochasticMatrix id3 = matrix_from_permutation(Permutation::identity(3));
  for (int pos = 1; pos <= 3; ++pos) {
    CHECK(id3.entry(pos - 1, pos) == 1.0);
  }
  const StochasticMatrix anti = matrix_from_permutation(Permutation({1, 0}));
  CHECK(anti.entry(1, 1) == 1.0);
  CHECK(anti.entry(0, 2) == 1.0);
  CHECK(anti.entry(0, 1) == 0.0);

  SplitMix64 gen(5);
  for (int rep = 0; rep < 20; ++rep) {
    const Permutation pi = testing::random_permutation(5, gen);
    const StochasticMatrix m = matrix_from_permutation(pi);
    CHECK(m.is_doubly_stochastic());
    for (ElementId e = 0; e < 5; ++e) {
      for (int pos = 1; pos <= 5; ++pos) {
        const double v = m.entry(e, pos);
        CHECK((v == 0.0 || v == 1.0));
      }
    }
    CHECK(m.to_permutation() == pi);
  }
}

TEST_CASE("stochastic matrix construction enforces the row invariants") {
  CHECK_THROWS_AS(StochasticMatrix(2, {0.5, 0.4, 0.5, 0.5}),
                  std::invalid_argument);
  CHECK_THROWS_AS(StochasticMatrix(2, {1.5, -0.5, 0.5, 0.5}),
                  std::invalid_argument);
  // Entries in [-eps_num, 0) are clamped to zero.
  const StochasticMatrix m(2, {1.0 + 5e-10, -5e-10, 0.0, 1.0});
  CHECK(m.entry(0, 2) == 0.0);
}

TEST_CASE("cost report totals stay consistent") {
  const CostReport rep = CostReport::from_rounds({3, 1, 2}, {0, 4, 1});
  CHECK(rep.total_covering == 6);
  CHECK(rep.total_moving == 5);
  CHECK(rep.total == 11);
}

#include <doctest.h>

#include "generators.hpp"
#include "oracles.hpp"
#include "xlproj/error.hpp"
#include "xlproj/matching.hpp"

using namespace xlproj;

namespace {

EntitySpan span(std::size_t s, std::size_t e) { return EntitySpan{s, e, std::nullopt}; }

CandidateSet candidate_set(std::vector<EntitySpan> spans, std::size_t length = 12) {
  CandidateSet c;
  c.sentence_length = length;
  c.spans = std::move(spans);
  return c;
}

MatchingProblem matrix_problem(const std::vector<std::vector<Rational>>& rows,
                               std::vector<EntitySpan> candidates,
                               MatchMode mode = MatchMode::kAtMostOne) {
  std::vector<EntitySpan> sources;
  for (std::size_t s = 0; s < rows.size(); ++s) sources.push_back({2 * s, 2 * s + 1, "PER"});
  CostMatrix costs(rows.size(), candidates.size());
  for (std::size_t s = 0; s < rows.size(); ++s)
    for (std::size_t t = 0; t < candidates.size(); ++t) costs(s, t) = rows[s][t];
  return make_problem(std::move(sources), candidate_set(std::move(candidates)), std::move(costs),
                      mode);
}

// Mark Twain / Florida sentence pair with its candidates and alignments.
MatchingProblem twain_problem(MatchMode mode = MatchMode::kAtMostOne) {
  LabeledSentence src{Sentence{0, {"Mark", "Twain", "was", "born", "in", "Florida"}},
                      {{0, 2, "PER"}, {5, 6, "LOC"}}};
  Sentence tgt{0, {"Mark", "Twain", "wurde", "in", "Florida", "geboren"}};
  std::vector<EntitySpan> ext = {span(0, 2), span(4, 5)};
  return build_problem(src, external_candidates(tgt, ext), AlignmentSet({{0, 0}, {1, 1}, {5, 4}}),
                       mode);
}

// Greedy takes 3/5 first and is left with 1/10; the crossed assignment
// scores 1/2 + 1/2.
MatchingProblem greedy_trap() {
  return matrix_problem({{Rational(3, 5), Rational(1, 2)}, {Rational(1, 2), Rational(1, 10)}},
                        {span(0, 1), span(1, 2)});
}

}  // namespace

TEST_CASE("matching_cost") {
  AlignmentSet diag({{0, 0}, {1, 1}});
  CHECK(matching_cost(span(0, 2), span(0, 2), diag) == Rational(1, 2));
  CHECK(oracle::matching_cost(span(0, 2), span(0, 2), diag.pairs()) == Rational(1, 2));
  CHECK(matching_cost(span(5, 6), span(4, 5), AlignmentSet()) == 0);
  AlignmentSet florida({{5, 4}});
  CHECK(matching_cost(span(5, 6), span(4, 5), florida) == Rational(1, 2));
  CHECK(oracle::matching_cost(span(5, 6), span(4, 5), florida.pairs()) == Rational(1, 2));
}

TEST_CASE("matching_cost agrees with the pair-scan count") {
  gen::Rng rng(31);
  for (int i = 0; i < 3000; ++i) {
    const std::size_t n = gen::uniform(rng, 1, 10), m = gen::uniform(rng, 1, 10);
    std::vector<AlignmentPair> pairs;
    for (std::size_t k = gen::uniform(rng, 0, 12); k > 0; --k)
      pairs.push_back({gen::uniform(rng, 0, n - 1), gen::uniform(rng, 0, m - 1)});
    AlignmentSet a(pairs);
    auto s = span(gen::uniform(rng, 0, n - 1), 0);
    s.end = gen::uniform(rng, s.start + 1, n);
    auto t = span(gen::uniform(rng, 0, m - 1), 0);
    t.end = gen::uniform(rng, t.start + 1, m);
    const auto c = matching_cost(s, t, a);
    CHECK(c >= 0);
    CHECK(c == oracle::matching_cost(s, t, pairs));
  }
}

TEST_CASE("build_problem") {
  SUBCASE("Mark Twain / Florida matrix") {
    auto p = twain_problem();
    REQUIRE(p.costs.rows() == 2);
    REQUIRE(p.costs.cols() == 2);
    CHECK(p.costs(0, 0) == Rational(1, 2));
    CHECK(p.costs(0, 1) == 0);
    CHECK(p.costs(1, 0) == 0);
    CHECK(p.costs(1, 1) == Rational(1, 2));
    CHECK(p.sources[0].label == std::optional<std::string>("PER"));
  }
  SUBCASE("no candidates") {
    LabeledSentence src{Sentence{0, {"a", "b"}}, {{0, 1, "PER"}, {1, 2, "LOC"}}};
    auto p = build_problem(src, candidate_set({}, 3), AlignmentSet({{0, 0}}));
    CHECK(p.costs.rows() == 2);
    CHECK(p.costs.cols() == 0);
    CHECK(solve_greedy(p).assignments.empty());
    CHECK(solve_bruteforce(p).assignments.empty());
    CHECK(solve_assignment_exact(p).assignments.empty());
    CHECK(solve_relaxed_mwis(p).assignments.empty());
    p.mode = MatchMode::kRequireAll;
    CHECK_THROWS_AS(solve_bruteforce(p), InfeasibleError);
    CHECK_THROWS_AS(solve_assignment_exact(p), InfeasibleError);
  }
  SUBCASE("no entities") {
    LabeledSentence src{Sentence{0, {"a", "b"}}, {}};
    auto p = build_problem(src, candidate_set({span(0, 1), span(1, 3)}, 3), AlignmentSet());
    CHECK(p.costs.rows() == 0);
    CHECK(p.costs.cols() == 2);
    for (auto mode : {MatchMode::kAtMostOne, MatchMode::kRequireAll}) {
      p.mode = mode;
      CHECK(solve_bruteforce(p).objective == 0);
      CHECK(solve_assignment_exact(p).assignments.empty());
    }
  }
  SUBCASE("alignment out of bounds") {
    LabeledSentence src{Sentence{0, {"a"}}, {{0, 1, "PER"}}};
    CHECK_THROWS_AS(build_problem(src, candidate_set({span(0, 1)}, 1), AlignmentSet({{0, 3}})),
                    DataError);
  }
  SUBCASE("make_problem validates") {
    CHECK_THROWS_AS(make_problem({span(0, 1)}, candidate_set({span(0, 1)}), CostMatrix(1, 2)),
                    DataError);
    CostMatrix neg(1, 1);
    neg(0, 0) = Rational(-1, 2);
    CHECK_THROWS_AS(make_problem({span(0, 1)}, candidate_set({span(0, 1)}), neg), DataError);
  }
}

TEST_CASE("solve_greedy") {
  SUBCASE("Mark Twain / Florida") {
    auto sol = solve_greedy(twain_problem());
    CHECK(sol.assignments == std::vector<Assignment>{{0, 0}, {1, 1}});
    CHECK(sol.objective == 1);
    CHECK_FALSE(sol.exact);
  }
  SUBCASE("zero cost is never projected") {
    auto sol = solve_greedy(matrix_problem({{Rational(0)}}, {span(0, 1)}));
    CHECK(sol.assignments.empty());
  }
  SUBCASE("suboptimal trap") {
    auto p = greedy_trap();
    auto sol = solve_greedy(p);
    CHECK(sol.assignments == std::vector<Assignment>{{0, 0}, {1, 1}});
    CHECK(sol.objective == Rational(7, 10));
    CHECK(oracle::matching_optimum(p) == Rational(1));
  }
  SUBCASE("REQUIRE_ALL is refused") {
    CHECK_THROWS_AS(solve_greedy(twain_problem(MatchMode::kRequireAll)), ConfigError);
  }
  SUBCASE("ties go to the lowest source, then the lowest candidate start") {
    auto p = matrix_problem({{Rational(1, 2), Rational(1, 2)}, {Rational(1, 2), Rational(1, 2)}},
                            {span(3, 4), span(0, 2)});
    auto sol = solve_greedy(p);
    CHECK(sol.assignments == std::vector<Assignment>{{0, 1}, {1, 0}});
  }
  SUBCASE("overlapping candidates are excluded after a projection") {
    auto p = matrix_problem({{Rational(1, 2), Rational(0)}, {Rational(2, 5), Rational(1, 3)}},
                            {span(0, 2), span(1, 3)});
    auto sol = solve_greedy(p);
    CHECK(sol.assignments == std::vector<Assignment>{{0, 0}});
  }
}

TEST_CASE("solve_bruteforce") {
  SUBCASE("greedy trap") {
    auto sol = solve_bruteforce(greedy_trap());
    CHECK(sol.assignments == std::vector<Assignment>{{0, 1}, {1, 0}});
    CHECK(sol.objective == 1);
    CHECK(sol.exact);
  }
  SUBCASE("Mark Twain / Florida") {
    auto p = twain_problem();
    CHECK(solve_bruteforce(p) == MatchingSolution{{{0, 0}, {1, 1}}, Rational(1), true});
    CHECK(oracle::matching_optimum(p) == Rational(1));
  }
  SUBCASE("REQUIRE_ALL with a source lacking any positive candidate") {
    auto p = matrix_problem({{Rational(1, 2), Rational(0)}, {Rational(0), Rational(0)}},
                            {span(0, 2), span(1, 3)}, MatchMode::kRequireAll);
    try {
      solve_bruteforce(p);
      FAIL("expected InfeasibleError");
    } catch (const InfeasibleError& e) {
      CHECK(std::string(e.what()).find("s1") != std::string::npos);
    }
  }
  SUBCASE("REQUIRE_ALL blocked by overlap") {
    auto p = matrix_problem({{Rational(1, 2), Rational(0)}, {Rational(0), Rational(1, 3)}},
                            {span(0, 2), span(1, 3)}, MatchMode::kRequireAll);
    CHECK_THROWS_AS(solve_bruteforce(p), InfeasibleError);
    CHECK(oracle::matching_optimum(p) == std::nullopt);
  }
  SUBCASE("REQUIRE_ALL forces a lower objective") {
    // s0 alone would take t0 (1/2); covering s1 pushes s0 to t1.
    auto p = matrix_problem({{Rational(1, 2), Rational(1, 5)}, {Rational(1, 5), Rational(0)}},
                            {span(0, 1), span(1, 2)}, MatchMode::kRequireAll);
    auto sol = solve_bruteforce(p);
    CHECK(sol.assignments == std::vector<Assignment>{{0, 1}, {1, 0}});
    CHECK(sol.objective == Rational(2, 5));
    CHECK(solve_assignment_exact(p).objective == Rational(2, 5));
  }
  SUBCASE("size guard") {
    std::vector<std::vector<Rational>> rows(7, std::vector<Rational>(1, Rational(1, 2)));
    auto p = matrix_problem(rows, {span(0, 1)});
    CHECK_THROWS_AS(solve_bruteforce(p), GuardError);
    CHECK(solve_bruteforce(p, BruteForceLimits{6, 12, true}).objective == Rational(1, 2));
    std::vector<EntitySpan> many;
    for (std::size_t i = 0; i < 13; ++i) many.push_back(span(i, i + 1));
    auto wide = matrix_problem({std::vector<Rational>(13, Rational(1, 3))}, many);
    CHECK_THROWS_AS(solve_bruteforce(wide), GuardError);
  }
  SUBCASE("ties resolve to the lexicographically first assignment") {
    auto p = matrix_problem({{Rational(1, 2), Rational(1, 2)}}, {span(0, 1), span(1, 2)});
    CHECK(solve_bruteforce(p).assignments == std::vector<Assignment>{{0, 0}});
  }
}

TEST_CASE("solve_assignment_exact") {
  SUBCASE("greedy trap") {
    auto sol = solve_assignment_exact(greedy_trap());
    CHECK(sol.objective == 1);
    CHECK(sol.assignments == std::vector<Assignment>{{0, 1}, {1, 0}});
  }
  SUBCASE("positive diagonal gives the identity") {
    auto p = matrix_problem({{Rational(1, 2), 0, 0}, {0, Rational(1, 3), 0}, {0, 0, Rational(1, 4)}},
                            {span(0, 1), span(1, 2), span(2, 3)});
    auto sol = solve_assignment_exact(p);
    CHECK(sol.assignments == std::vector<Assignment>{{0, 0}, {1, 1}, {2, 2}});
    CHECK(sol.objective == Rational(13, 12));
  }
  SUBCASE("all zero") {
    auto p = matrix_problem({{0, 0}, {0, 0}}, {span(0, 1), span(1, 2)});
    CHECK(solve_assignment_exact(p).assignments.empty());
  }
  SUBCASE("overlapping candidates are refused") {
    auto p = matrix_problem({{Rational(1, 2), Rational(1, 2)}}, {span(0, 2), span(1, 3)});
    CHECK_THROWS_AS(solve_assignment_exact(p), ConfigError);
  }
  SUBCASE("more sources than candidates") {
    auto p = matrix_problem({{Rational(1, 4)}, {Rational(1, 2)}, {Rational(1, 3)}}, {span(0, 1)});
    auto sol = solve_assignment_exact(p);
    CHECK(sol.assignments == std::vector<Assignment>{{1, 0}});
  }
}

TEST_CASE("solve_relaxed_mwis") {
  SUBCASE("chain of three unit intervals") {
    auto p = matrix_problem({{1, 1, 1}}, {span(0, 2), span(1, 3), span(2, 4)});
    auto sol = solve_relaxed_mwis(p);
    CHECK(sol.objective == 2);
    CHECK(sol.assignments == std::vector<Assignment>{{0, 0}, {0, 2}});
    CHECK(oracle::interval_mwis(p.candidates.spans, {1, 1, 1}) == 2);
    CHECK_FALSE(find_violation(p, sol, false));
    CHECK(find_violation(p, sol, true));
  }
  SUBCASE("single candidate") {
    auto sol = solve_relaxed_mwis(matrix_problem({{Rational(1, 2)}}, {span(0, 1)}));
    CHECK(sol.objective == Rational(1, 2));
    CHECK(sol.assignments.size() == 1);
  }
  SUBCASE("clique") {
    auto p = matrix_problem({{Rational(3, 10), Rational(7, 10), Rational(1, 2)}},
                            {span(0, 3), span(1, 3), span(2, 4)});
    auto sol = solve_relaxed_mwis(p);
    CHECK(sol.objective == Rational(7, 10));
    CHECK(sol.assignments == std::vector<Assignment>{{0, 1}});
  }
  SUBCASE("best source per candidate") {
    auto p = matrix_problem({{Rational(1, 4)}, {Rational(1, 2)}}, {span(0, 1)});
    CHECK(solve_relaxed_mwis(p).assignments == std::vector<Assignment>{{1, 0}});
  }
}

TEST_CASE("solver properties on random alignment-derived problems") {
  gen::Rng rng(1234);
  for (int i = 0; i < 400; ++i) {
    const bool disjoint = i % 2 == 0;
    auto p = gen::aligned_problem(rng, 4, 6, disjoint);
    const auto greedy = solve_greedy(p);
    const auto brute = solve_bruteforce(p);
    const auto relaxed = solve_relaxed_mwis(p);
    CHECK_FALSE(find_violation(p, greedy));
    CHECK_FALSE(find_violation(p, brute));
    CHECK_FALSE(find_violation(p, relaxed, false));
    CHECK(greedy.objective <= brute.objective);
    CHECK(brute.objective <= relaxed.objective);
    if (p.costs.rows() * p.costs.cols() <= 20) {
      CHECK(oracle::matching_optimum(p) == brute.objective);
    }
    if (disjoint) {
      const auto assignment = solve_assignment_exact(p);
      CHECK_FALSE(find_violation(p, assignment));
      CHECK(assignment.objective == brute.objective);
    }
  }
}

TEST_CASE("solver properties on random cost matrices, both modes") {
  gen::Rng rng(99);
  for (int i = 0; i < 600; ++i) {
    const bool disjoint = i % 3 != 0;
    const auto mode = i % 2 ? MatchMode::kRequireAll : MatchMode::kAtMostOne;
    auto p = gen::random_cost_problem(rng, 4, 5, disjoint, mode);
    const auto expected = oracle::matching_optimum(p);
    std::optional<Rational> got;
    try {
      const auto sol = solve_bruteforce(p);
      CHECK_FALSE(find_violation(p, sol));
      got = sol.objective;
    } catch (const InfeasibleError&) {
    }
    CHECK(got == expected);
    if (disjoint) {
      std::optional<Rational> assigned;
      try {
        const auto sol = solve_assignment_exact(p);
        CHECK_FALSE(find_violation(p, sol));
        assigned = sol.objective;
      } catch (const InfeasibleError&) {
      }
      CHECK(assigned == expected);
    }
    if (mode == MatchMode::kAtMostOne) {
      const auto relaxed = solve_relaxed_mwis(p);
      std::vector<Rational> weights;
      for (std::size_t t = 0; t < p.costs.cols(); ++t) {
        Rational w(0);
        for (std::size_t s = 0; s < p.costs.rows(); ++s) w = std::max(w, p.costs(s, t));
        weights.push_back(w);
      }
      CHECK(relaxed.objective == oracle::interval_mwis(p.candidates.spans, weights));
      CHECK(*expected <= relaxed.objective);
      CHECK(solve_greedy(p).objective <= *expected);
    }
  }
}

TEST_CASE("solvers are deterministic") {
  gen::Rng rng(17);
  for (int i = 0; i < 100; ++i) {
    auto p = gen::aligned_problem(rng, 5, 8, i % 2 == 0);
    CHECK(solve_greedy(p) == solve_greedy(p));
    CHECK(solve_bruteforce(p) == solve_bruteforce(p));
    CHECK(solve_relaxed_mwis(p) == solve_relaxed_mwis(p));
  }
}

TEST_CASE("find_violation catches broken solutions") {
  auto p = matrix_problem({{Rational(1, 2), Rational(1, 2)}, {Rational(1, 2), Rational(1, 2)}},
                          {span(0, 2), span(1, 3)});
  CHECK(find_violation(p, {{{0, 0}, {1, 1}}, Rational(1), true}));  // overlap
  CHECK(find_violation(p, {{{0, 0}}, Rational(1), true}));          // wrong objective
  CHECK_FALSE(find_violation(p, {{{0, 0}}, Rational(1, 2), true}));
  auto z = matrix_problem({{Rational(0)}}, {span(0, 1)});
  CHECK(find_violation(z, {{{0, 0}}, Rational(0), true}));  // zero-cost pair
}

TEST_CASE("render_problem prints an aligned matrix of exact rationals") {
  const auto text = render_problem(twain_problem());
  CHECK(text.find("mode: atmost") != std::string::npos);
  CHECK(text.find("     t0   t1\ns0  1/2    0\ns1    0  1/2\n") != std::string::npos);
  LabeledSentence empty{Sentence{0, {"a"}}, {}};
  const auto none = render_problem(build_problem(empty, candidate_set({span(0, 1)}, 1), AlignmentSet()));
  CHECK(none.find("empty cost matrix") != std::string::npos);
}

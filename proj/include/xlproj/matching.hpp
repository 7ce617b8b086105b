#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "xlproj/candidates.hpp"
#include "xlproj/core.hpp"
#include "xlproj/rational.hpp"

namespace xlproj {

// Per-source constraint of the matching problem: each source entity is
// projected at most once, or exactly once.
enum class MatchMode { kAtMostOne, kRequireAll };

// Dense |sources| x |candidates| matrix of non-negative costs.
class CostMatrix {
 public:
  CostMatrix() = default;
  CostMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), cells_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const Rational& operator()(std::size_t s, std::size_t t) const { return cells_[s * cols_ + t]; }
  Rational& operator()(std::size_t s, std::size_t t) { return cells_[s * cols_ + t]; }

  bool operator==(const CostMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> cells_;
};

struct MatchingProblem {
  std::vector<EntitySpan> sources;
  CandidateSet candidates;
  CostMatrix costs;
  MatchMode mode = MatchMode::kAtMostOne;
};

struct Assignment {
  std::size_t source = 0;
  std::size_t candidate = 0;

  auto operator<=>(const Assignment&) const = default;
};

struct MatchingSolution {
  std::vector<Assignment> assignments;  // sorted by (source, candidate)
  Rational objective{0};
  bool exact = false;

  bool operator==(const MatchingSolution&) const = default;
};

// Aligned-word count between the two spans divided by the sum of their
// lengths. Zero when nothing is aligned.
Rational matching_cost(const EntitySpan& source, const EntitySpan& target,
                       const AlignmentSet& alignments);

MatchingProblem build_problem(const LabeledSentence& labeled, const CandidateSet& candidates,
                              const AlignmentSet& alignments,
                              MatchMode mode = MatchMode::kAtMostOne);

// Assembles a problem from an explicit cost matrix. Throws DataError on a
// dimension mismatch or a negative entry.
MatchingProblem make_problem(std::vector<EntitySpan> sources, CandidateSet candidates,
                             CostMatrix costs, MatchMode mode = MatchMode::kAtMostOne);

// Repeatedly projects the largest positive remaining cost. Approximate;
// rejects REQUIRE_ALL with ConfigError.
MatchingSolution solve_greedy(const MatchingProblem& problem);

struct BruteForceLimits {
  std::size_t max_sources = 6;
  std::size_t max_candidates = 12;
  bool unsafe = false;  // skip the size guard
};

// Exhaustive search. Throws GuardError above the limits and InfeasibleError
// when REQUIRE_ALL cannot be met.
MatchingSolution solve_bruteforce(const MatchingProblem& problem, BruteForceLimits limits = {});

// Exact maximum-weight bipartite matching; requires pairwise disjoint
// candidates.
MatchingSolution solve_assignment_exact(const MatchingProblem& problem);

// Drops the per-source cap: each candidate carries its best source's cost and
// a maximum-weight set of disjoint candidates is selected. Ignores mode.
MatchingSolution solve_relaxed_mwis(const MatchingProblem& problem);

// Sum of costs over `assignments`.
Rational objective_of(const MatchingProblem& problem, const std::vector<Assignment>& assignments);

// Independent feasibility check. Returns a description of the first
// violated constraint, or nullopt.
std::optional<std::string> find_violation(const MatchingProblem& problem,
                                          const MatchingSolution& solution,
                                          bool enforce_source_cap = true);

// Aligned text rendering of the cost matrix and mode.
std::string render_problem(const MatchingProblem& problem);
std::string render_solution(const MatchingProblem& problem, const MatchingSolution& solution);

}  // namespace xlproj

#include <algorithm>

#include "xlproj/error.hpp"
#include "xlproj/matching.hpp"

namespace xlproj {

namespace {

// Depth-first over sources in index order. Each source tries its positive
// candidates in index order, then "unassigned". Only strictly better
// objectives replace the incumbent, so the first optimum in that order wins.
class BruteForceSearch {
 public:
  explicit BruteForceSearch(const MatchingProblem& problem)
      : problem_(problem),
        rows_(problem.costs.rows()),
        cols_(problem.costs.cols()),
        overlap_(cols_ * cols_, false),
        in_use_(cols_, false),
        choice_(rows_, kNone),
        row_max_suffix_(rows_ + 1, Rational(0)) {
    const auto& spans = problem.candidates.spans;
    for (std::size_t a = 0; a < cols_; ++a) {
      for (std::size_t b = 0; b < cols_; ++b) {
        overlap_[a * cols_ + b] = spans_overlap(spans[a], spans[b]);
      }
    }
    for (std::size_t s = rows_; s-- > 0;) {
      Rational row_max(0);
      for (std::size_t t = 0; t < cols_; ++t) row_max = std::max(row_max, problem.costs(s, t));
      row_max_suffix_[s] = row_max_suffix_[s + 1] + row_max;
    }
  }

  std::optional<std::vector<std::size_t>> run() {
    visit(0, Rational(0));
    return best_;
  }

  const Rational& best_objective() const { return best_objective_; }

  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

 private:
  void visit(std::size_t s, const Rational& value) {
    if (best_ && value + row_max_suffix_[s] <= best_objective_) return;
    if (s == rows_) {
      best_ = choice_;
      best_objective_ = value;
      return;
    }
    for (std::size_t t = 0; t < cols_; ++t) {
      const auto& cost = problem_.costs(s, t);
      if (cost <= 0 || blocked(t)) continue;
      in_use_[t] = true;
      choice_[s] = t;
      visit(s + 1, value + cost);
      in_use_[t] = false;
      choice_[s] = kNone;
    }
    if (problem_.mode == MatchMode::kAtMostOne) visit(s + 1, value);
  }

  bool blocked(std::size_t t) const {
    for (std::size_t u = 0; u < cols_; ++u) {
      if (in_use_[u] && overlap_[t * cols_ + u]) return true;
    }
    return false;
  }

  const MatchingProblem& problem_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<bool> overlap_;
  std::vector<bool> in_use_;
  std::vector<std::size_t> choice_;
  std::vector<Rational> row_max_suffix_;
  std::optional<std::vector<std::size_t>> best_;
  Rational best_objective_{0};
};

}  // namespace

MatchingSolution solve_bruteforce(const MatchingProblem& problem, BruteForceLimits limits) {
  const auto rows = problem.costs.rows();
  const auto cols = problem.costs.cols();
  if (!limits.unsafe && (rows > limits.max_sources || cols > limits.max_candidates)) {
    throw GuardError("brute-force guard exceeded: " + std::to_string(rows) + " sources x " +
                     std::to_string(cols) + " candidates (limit " +
                     std::to_string(limits.max_sources) + " x " +
                     std::to_string(limits.max_candidates) + ")");
  }

  BruteForceSearch search(problem);
  auto best = search.run();
  if (!best) {
    std::string uncoverable;
    for (std::size_t s = 0; s < rows; ++s) {
      bool any = false;
      for (std::size_t t = 0; t < cols; ++t) any = any || problem.costs(s, t) > 0;
      if (!any) uncoverable += (uncoverable.empty() ? "s" : ", s") + std::to_string(s);
    }
    throw InfeasibleError(uncoverable.empty()
                              ? "no non-overlapping assignment covers every source"
                              : "sources without any positive-cost candidate: " + uncoverable);
  }

  MatchingSolution out;
  for (std::size_t s = 0; s < rows; ++s) {
    if ((*best)[s] != BruteForceSearch::kNone) out.assignments.push_back({s, (*best)[s]});
  }
  out.objective = search.best_objective();
  out.exact = true;
  return out;
}

}  // namespace xlproj

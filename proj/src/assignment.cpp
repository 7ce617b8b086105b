#include <cstdint>
#include <limits>
#include <numeric>

#include "xlproj/error.hpp"
#include "xlproj/matching.hpp"

namespace xlproj {

namespace {

using Wide = __int128;

std::int64_t checked(Wide value) {
  if (value > std::numeric_limits<std::int64_t>::max() ||
      value < std::numeric_limits<std::int64_t>::min()) {
    throw GuardError("cost magnitudes too large for exact integer assignment");
  }
  return static_cast<std::int64_t>(value);
}

// Minimum-cost perfect matching on a square matrix (Hungarian method with
// potentials, O(n^3)). Returns the column assigned to each row.
std::vector<std::size_t> hungarian_min(const std::vector<std::int64_t>& cost, std::size_t n) {
  constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;
  // 1-based with a virtual column 0.
  std::vector<std::int64_t> u(n + 1, 0), v(n + 1, 0);
  std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::vector<std::int64_t> minv(n + 1, kInf);
    std::vector<bool> used(n + 1, false);
    do {
      used[j0] = true;
      const std::size_t i0 = p[j0];
      std::int64_t delta = kInf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const std::int64_t cur = cost[(i0 - 1) * n + (j - 1)] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<std::size_t> row_to_col(n, 0);
  for (std::size_t j = 1; j <= n; ++j) {
    if (p[j] != 0) row_to_col[p[j] - 1] = j - 1;
  }
  return row_to_col;
}

}  // namespace

MatchingSolution solve_assignment_exact(const MatchingProblem& problem) {
  if (!problem.candidates.pairwise_disjoint()) {
    throw ConfigError(
        "assignment solver requires pairwise disjoint candidates; use greedy or brute force");
  }
  const auto rows = problem.costs.rows();
  const auto cols = problem.costs.cols();

  // Scale every cost by the common denominator so the matching runs on
  // exact integers.
  std::int64_t scale = 1;
  for (std::size_t s = 0; s < rows; ++s) {
    for (std::size_t t = 0; t < cols; ++t) {
      const auto& c = problem.costs(s, t);
      if (c > 0) scale = checked(Wide(scale) / std::gcd(scale, c.denominator()) * c.denominator());
    }
  }
  std::vector<std::int64_t> weight(rows * cols, 0);
  Wide total = 0;
  for (std::size_t s = 0; s < rows; ++s) {
    for (std::size_t t = 0; t < cols; ++t) {
      const auto& c = problem.costs(s, t);
      if (c <= 0) continue;
      weight[s * cols + t] = checked(Wide(c.numerator()) * (scale / c.denominator()));
      total += weight[s * cols + t];
    }
  }
  // Under REQUIRE_ALL every positive edge carries a bonus larger than any
  // achievable weight, so the matching first maximises the number of matched
  // sources.
  const std::int64_t bonus = problem.mode == MatchMode::kRequireAll ? checked(total + 1) : 0;
  const std::size_t n = std::max(rows, cols);
  checked((Wide(bonus) + total) * Wide(n + 1));

  std::vector<std::int64_t> cost(n * n, 0);
  for (std::size_t s = 0; s < rows; ++s) {
    for (std::size_t t = 0; t < cols; ++t) {
      const auto w = weight[s * cols + t];
      if (w > 0) cost[s * n + t] = -(w + bonus);
    }
  }

  MatchingSolution out;
  out.exact = true;
  if (n > 0) {
    const auto row_to_col = hungarian_min(cost, n);
    for (std::size_t s = 0; s < rows; ++s) {
      const auto t = row_to_col[s];
      if (t < cols && weight[s * cols + t] > 0) {
        out.assignments.push_back({s, t});
        out.objective += problem.costs(s, t);
      }
    }
  }
  if (problem.mode == MatchMode::kRequireAll && out.assignments.size() != rows) {
    std::vector<bool> covered(rows, false);
    for (const auto& a : out.assignments) covered[a.source] = true;
    std::string missing;
    for (std::size_t s = 0; s < rows; ++s) {
      if (!covered[s]) missing += (missing.empty() ? "s" : ", s") + std::to_string(s);
    }
    throw InfeasibleError("no assignment covers every source; uncovered: " + missing);
  }
  return out;
}

}  // namespace xlproj

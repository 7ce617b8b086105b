#include <algorithm>
#include <numeric>
#include <optional>
#include <tuple>

#include "xlproj/matching.hpp"

namespace xlproj {

MatchingSolution solve_relaxed_mwis(const MatchingProblem& problem) {
  const auto& costs = problem.costs;
  const auto& spans = problem.candidates.spans;

  struct Interval {
    std::size_t candidate;
    std::size_t source;
    Rational weight;
  };
  std::vector<Interval> intervals;
  for (std::size_t t = 0; t < costs.cols(); ++t) {
    std::optional<std::size_t> best;
    for (std::size_t s = 0; s < costs.rows(); ++s) {
      if (costs(s, t) <= 0) continue;
      if (!best || costs(s, t) > costs(*best, t) ||
          (costs(s, t) == costs(*best, t) &&
           problem.sources[s].start < problem.sources[*best].start)) {
        best = s;
      }
    }
    if (best) intervals.push_back({t, *best, costs(*best, t)});
  }

  std::sort(intervals.begin(), intervals.end(), [&](const Interval& a, const Interval& b) {
    const auto& x = spans[a.candidate];
    const auto& y = spans[b.candidate];
    return std::tie(x.end, x.start, a.candidate) < std::tie(y.end, y.start, b.candidate);
  });

  // value[k]: best total over the first k intervals in end order.
  // compatible[k]: number of leading intervals ending at or before interval k starts.
  const std::size_t m = intervals.size();
  std::vector<Rational> value(m + 1, Rational(0));
  std::vector<std::size_t> compatible(m, 0);
  std::vector<bool> take(m, false);
  for (std::size_t k = 0; k < m; ++k) {
    const auto start = spans[intervals[k].candidate].start;
    compatible[k] = static_cast<std::size_t>(
        std::upper_bound(intervals.begin(), intervals.begin() + k, start,
                         [&](std::size_t pos, const Interval& iv) {
                           return pos < spans[iv.candidate].end;
                         }) -
        intervals.begin());
    const Rational with = intervals[k].weight + value[compatible[k]];
    take[k] = with > value[k];
    value[k + 1] = take[k] ? with : value[k];
  }

  MatchingSolution out;
  out.exact = true;
  out.objective = value[m];
  for (std::size_t k = m; k > 0;) {
    if (take[k - 1]) {
      out.assignments.push_back({intervals[k - 1].source, intervals[k - 1].candidate});
      k = compatible[k - 1];
    } else {
      --k;
    }
  }
  std::sort(out.assignments.begin(), out.assignments.end());
  return out;
}

}  // namespace xlproj

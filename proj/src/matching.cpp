#include "xlproj/matching.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

#include "xlproj/error.hpp"

namespace xlproj {

Rational matching_cost(const EntitySpan& source, const EntitySpan& target,
                       const AlignmentSet& alignments) {
  const auto aligned = alignments.count_between(source, target);
  if (aligned == 0) return Rational(0);
  return Rational(static_cast<std::int64_t>(aligned),
                  static_cast<std::int64_t>(source.length() + target.length()));
}

MatchingProblem build_problem(const LabeledSentence& labeled, const CandidateSet& candidates,
                              const AlignmentSet& alignments, MatchMode mode) {
  labeled.validate();
  alignments.check_bounds(labeled.sentence.size(), candidates.sentence_length);
  CostMatrix costs(labeled.entities.size(), candidates.size());
  for (std::size_t s = 0; s < costs.rows(); ++s) {
    for (std::size_t t = 0; t < costs.cols(); ++t) {
      costs(s, t) = matching_cost(labeled.entities[s], candidates.spans[t], alignments);
    }
  }
  return MatchingProblem{labeled.entities, candidates, std::move(costs), mode};
}

MatchingProblem make_problem(std::vector<EntitySpan> sources, CandidateSet candidates,
                             CostMatrix costs, MatchMode mode) {
  if (costs.rows() != sources.size() || costs.cols() != candidates.size()) {
    throw DataError("cost matrix is " + std::to_string(costs.rows()) + "x" +
                    std::to_string(costs.cols()) + ", expected " + std::to_string(sources.size()) +
                    "x" + std::to_string(candidates.size()));
  }
  for (std::size_t s = 0; s < costs.rows(); ++s) {
    for (std::size_t t = 0; t < costs.cols(); ++t) {
      if (costs(s, t) < 0) throw DataError("negative matching cost");
    }
  }
  return MatchingProblem{std::move(sources), std::move(candidates), std::move(costs), mode};
}

Rational objective_of(const MatchingProblem& problem, const std::vector<Assignment>& assignments) {
  Rational total(0);
  for (const auto& a : assignments) total += problem.costs(a.source, a.candidate);
  return total;
}

std::optional<std::string> find_violation(const MatchingProblem& problem,
                                          const MatchingSolution& solution,
                                          bool enforce_source_cap) {
  const auto& as = solution.assignments;
  std::vector<std::size_t> per_source(problem.sources.size(), 0);
  for (std::size_t i = 0; i < as.size(); ++i) {
    const auto& a = as[i];
    if (a.source >= problem.sources.size() || a.candidate >= problem.candidates.size()) {
      return "assignment index out of range";
    }
    if (problem.costs(a.source, a.candidate) <= 0) {
      return "zero-cost pair s" + std::to_string(a.source) + "->t" + std::to_string(a.candidate) +
             " assigned";
    }
    ++per_source[a.source];
    for (std::size_t j = 0; j < i; ++j) {
      const auto& other = problem.candidates.spans[as[j].candidate];
      if (spans_overlap(problem.candidates.spans[a.candidate], other)) {
        return "candidates t" + std::to_string(as[j].candidate) + " and t" +
               std::to_string(a.candidate) + " overlap";
      }
    }
  }
  if (enforce_source_cap) {
    for (std::size_t s = 0; s < per_source.size(); ++s) {
      if (per_source[s] > 1) return "source s" + std::to_string(s) + " assigned more than once";
      if (problem.mode == MatchMode::kRequireAll && per_source[s] == 0) {
        return "source s" + std::to_string(s) + " unassigned under REQUIRE_ALL";
      }
    }
  }
  if (objective_of(problem, as) != solution.objective) {
    return "objective " + to_string(solution.objective) + " differs from assignment sum " +
           to_string(objective_of(problem, as));
  }
  return std::nullopt;
}

MatchingSolution solve_greedy(const MatchingProblem& problem) {
  if (problem.mode == MatchMode::kRequireAll) {
    throw ConfigError("greedy solver cannot guarantee REQUIRE_ALL; use an exact solver");
  }
  const auto& costs = problem.costs;
  const auto& cands = problem.candidates.spans;
  std::vector<bool> source_alive(costs.rows(), true);
  std::vector<bool> cand_alive(costs.cols(), true);

  // Ties prefer the lowest source start, then the lowest candidate start.
  auto tie_key = [&](std::size_t s, std::size_t t) {
    return std::make_tuple(problem.sources[s].start, s, cands[t].start, cands[t].end, t);
  };

  MatchingSolution out;
  while (true) {
    std::optional<Assignment> best;
    for (std::size_t s = 0; s < costs.rows(); ++s) {
      if (!source_alive[s]) continue;
      for (std::size_t t = 0; t < costs.cols(); ++t) {
        if (!cand_alive[t] || costs(s, t) <= 0) continue;
        if (!best) {
          best = Assignment{s, t};
          continue;
        }
        const auto& current = costs(best->source, best->candidate);
        if (costs(s, t) > current ||
            (costs(s, t) == current && tie_key(s, t) < tie_key(best->source, best->candidate))) {
          best = Assignment{s, t};
        }
      }
    }
    if (!best) break;
    out.assignments.push_back(*best);
    out.objective += costs(best->source, best->candidate);
    source_alive[best->source] = false;
    for (std::size_t t = 0; t < costs.cols(); ++t) {
      if (cand_alive[t] && spans_overlap(cands[t], cands[best->candidate])) cand_alive[t] = false;
    }
  }
  std::sort(out.assignments.begin(), out.assignments.end());
  out.exact = false;
  return out;
}

namespace {

std::string cell_text(const Rational& r) { return to_string(r); }

}  // namespace

std::string render_problem(const MatchingProblem& problem) {
  std::ostringstream out;
  out << "mode: " << (problem.mode == MatchMode::kAtMostOne ? "atmost" : "all") << "\n";
  if (problem.sources.empty()) {
    out << "no source entities: empty cost matrix\n";
    return out.str();
  }
  if (problem.candidates.size() == 0) {
    out << "no target candidates: empty cost matrix\n";
    return out.str();
  }
  out << "sources:";
  for (std::size_t s = 0; s < problem.sources.size(); ++s) {
    out << " s" << s << "=" << describe(problem.sources[s]);
  }
  out << "\ncandidates:";
  for (std::size_t t = 0; t < problem.candidates.size(); ++t) {
    out << " t" << t << "=" << describe(problem.candidates.spans[t]);
  }
  out << "\n";

  const auto& costs = problem.costs;
  std::vector<std::size_t> width(costs.cols() + 1, 0);
  width[0] = ("s" + std::to_string(costs.rows() - 1)).size();
  for (std::size_t t = 0; t < costs.cols(); ++t) {
    width[t + 1] = ("t" + std::to_string(t)).size();
    for (std::size_t s = 0; s < costs.rows(); ++s) {
      width[t + 1] = std::max(width[t + 1], cell_text(costs(s, t)).size());
    }
  }
  auto pad = [](const std::string& text, std::size_t w) {
    return std::string(w > text.size() ? w - text.size() : 0, ' ') + text;
  };
  out << std::string(width[0], ' ');
  for (std::size_t t = 0; t < costs.cols(); ++t) out << "  " << pad("t" + std::to_string(t), width[t + 1]);
  out << "\n";
  for (std::size_t s = 0; s < costs.rows(); ++s) {
    std::string name = "s" + std::to_string(s);
    out << name << std::string(width[0] - name.size(), ' ');
    for (std::size_t t = 0; t < costs.cols(); ++t) out << "  " << pad(cell_text(costs(s, t)), width[t + 1]);
    out << "\n";
  }
  return out.str();
}

std::string render_solution(const MatchingProblem& problem, const MatchingSolution& solution) {
  std::ostringstream out;
  out << "objective " << to_string(solution.objective) << (solution.exact ? " (exact)" : " (approximate)")
      << "\n";
  for (const auto& a : solution.assignments) {
    out << "  s" << a.source << " -> t" << a.candidate << "  "
        << describe(problem.candidates.spans[a.candidate]) << "  cost "
        << to_string(problem.costs(a.source, a.candidate)) << "\n";
  }
  return out.str();
}

}  // namespace xlproj

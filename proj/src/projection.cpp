#include "xlproj/projection.hpp"

#include <algorithm>

#include "xlproj/error.hpp"

namespace xlproj {

void ProjectionConfig::validate() const {
  if (ratio_threshold <= 0 || ratio_threshold > 1) {
    throw ConfigError("ratio threshold must lie in (0, 1], got " + to_string(ratio_threshold));
  }
  if (min_similarity < 0 || min_similarity > 1) {
    throw ConfigError("minimum similarity must lie in [0, 1], got " + to_string(min_similarity));
  }
  if (max_ngram_len && *max_ngram_len == 0) {
    throw ConfigError("n-gram length cap must be at least 1");
  }
  if (method == ProjectionMethod::kHeuristic) return;
  if (solver == SolverKind::kAssignment && candidate_source != CandidateSource::kExternalNer) {
    throw ConfigError("assignment solver requires external NER candidates");
  }
  if (solver == SolverKind::kGreedy && mode == MatchMode::kRequireAll) {
    throw ConfigError("greedy solver cannot guarantee REQUIRE_ALL; use brute or assignment");
  }
}

namespace {

void check_inputs(const LabeledSentence& labeled, const Sentence& target,
                  const AlignmentSet& alignments) {
  labeled.validate();
  alignments.check_bounds(labeled.sentence.size(), target.size());
}

LabeledSentence empty_projection(const Sentence& target) {
  return LabeledSentence{target, {}};
}

}  // namespace

LabeledSentence project_heuristic(const LabeledSentence& labeled, const Sentence& target,
                                  const AlignmentSet& alignments, Rational threshold) {
  check_inputs(labeled, target, alignments);
  auto out = empty_projection(target);

  for (const auto& entity : labeled.entities) {
    const auto aligned = alignments.targets_of(entity);
    if (aligned.empty()) continue;
    EntitySpan span{aligned.front(), aligned.back() + 1, entity.label};
    if (Rational(static_cast<std::int64_t>(aligned.size()),
                 static_cast<std::int64_t>(span.length())) < threshold) {
      // Longest run of consecutive aligned indices; the leftmost on ties.
      std::size_t best_start = 0, best_len = 0;
      for (std::size_t i = 0; i < aligned.size();) {
        std::size_t j = i + 1;
        while (j < aligned.size() && aligned[j] == aligned[j - 1] + 1) ++j;
        if (j - i > best_len) {
          best_start = i;
          best_len = j - i;
        }
        i = j;
      }
      span.start = aligned[best_start];
      span.end = aligned[best_start] + best_len;
    }
    const bool collides = std::any_of(out.entities.begin(), out.entities.end(),
                                      [&](const EntitySpan& e) { return spans_overlap(e, span); });
    if (!collides) out.entities.push_back(std::move(span));
  }
  std::sort(out.entities.begin(), out.entities.end(), span_less);
  return out;
}

CandidateSet build_candidates(const Sentence& target, const ProjectionConfig& cfg,
                              std::optional<std::span<const EntitySpan>> external_spans) {
  if (cfg.candidate_source == CandidateSource::kExternalNer) {
    if (!external_spans) {
      throw ConfigError("external NER candidates selected but no spans supplied");
    }
    return external_candidates(target, *external_spans);
  }
  return ngram_candidates(target, cfg.max_ngram_len);
}

MatchingSolution run_solver(const MatchingProblem& problem, SolverKind solver) {
  switch (solver) {
    case SolverKind::kGreedy:
      return solve_greedy(problem);
    case SolverKind::kBruteForce:
      return solve_bruteforce(problem);
    case SolverKind::kAssignment:
      return solve_assignment_exact(problem);
    case SolverKind::kRelaxedMwis:
      return solve_relaxed_mwis(problem);
  }
  throw ConfigError("unknown solver");
}

LabeledSentence project_matching(const LabeledSentence& labeled, const Sentence& target,
                                 const AlignmentSet& alignments, const ProjectionConfig& cfg,
                                 std::optional<std::span<const EntitySpan>> external_spans) {
  cfg.validate();
  check_inputs(labeled, target, alignments);
  if (labeled.entities.empty() || target.size() == 0) return empty_projection(target);

  const auto candidates = build_candidates(target, cfg, external_spans);

  const auto problem = build_problem(labeled, candidates, alignments, cfg.mode);
  const auto solution = run_solver(problem, cfg.solver);

  auto out = empty_projection(target);
  for (const auto& a : solution.assignments) {
    EntitySpan span = candidates.spans[a.candidate];
    span.label = labeled.entities[a.source].label;
    out.entities.push_back(std::move(span));
  }
  std::sort(out.entities.begin(), out.entities.end(), span_less);
  return out;
}

LabeledSentence project(const LabeledSentence& labeled, const Sentence& target,
                        const AlignmentSet& alignments, const ProjectionConfig& cfg,
                        std::optional<std::span<const EntitySpan>> external_spans) {
  if (cfg.method == ProjectionMethod::kHeuristic) {
    cfg.validate();
    return project_heuristic(labeled, target, alignments, cfg.ratio_threshold);
  }
  return project_matching(labeled, target, alignments, cfg, external_spans);
}

}  // namespace xlproj

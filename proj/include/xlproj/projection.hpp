#pragma once

#include <optional>
#include <span>
#include <string_view>

#include "xlproj/candidates.hpp"
#include "xlproj/core.hpp"
#include "xlproj/io.hpp"
#include "xlproj/matching.hpp"
#include "xlproj/rational.hpp"

namespace xlproj {

enum class ProjectionMethod { kHeuristic, kCandidateMatching };
enum class SolverKind { kGreedy, kBruteForce, kAssignment, kRelaxedMwis };

struct ProjectionConfig {
  ProjectionMethod method = ProjectionMethod::kCandidateMatching;
  CandidateSource candidate_source = CandidateSource::kNgram;
  SolverKind solver = SolverKind::kGreedy;
  Rational ratio_threshold{4, 5};
  NgramCap max_ngram_len = kDefaultMaxNgram;
  MatchMode mode = MatchMode::kAtMostOne;
  Rational min_similarity{1, 2};

  // Throws ConfigError on an inconsistent combination.
  void validate() const;
};

// Alignment-copy baseline. Each entity takes the hull of its aligned target
// words; when the aligned share of that hull is below `threshold`, the
// longest contiguous aligned run replaces it. Earlier entities win
// collisions.
LabeledSentence project_heuristic(const LabeledSentence& labeled, const Sentence& target,
                                  const AlignmentSet& alignments,
                                  Rational threshold = Rational(4, 5));

// Candidate extraction, cost matrix, solver, then label transfer.
// `external_spans` is required when cfg.candidate_source is kExternalNer.
LabeledSentence project_matching(const LabeledSentence& labeled, const Sentence& target,
                                 const AlignmentSet& alignments, const ProjectionConfig& cfg,
                                 std::optional<std::span<const EntitySpan>> external_spans = {});

// Dispatches on cfg.method.
LabeledSentence project(const LabeledSentence& labeled, const Sentence& target,
                        const AlignmentSet& alignments, const ProjectionConfig& cfg,
                        std::optional<std::span<const EntitySpan>> external_spans = {});

// Candidate set for `target` per cfg.candidate_source.
CandidateSet build_candidates(const Sentence& target, const ProjectionConfig& cfg,
                              std::optional<std::span<const EntitySpan>> external_spans = {});

MatchingSolution run_solver(const MatchingProblem& problem, SolverKind solver);

// 1 - edit_distance / max_length over case-folded code points.
Rational fuzzy_similarity(std::string_view a, std::string_view b);

// Labels bracketed spans of a back-translated sentence with the best-matching
// entity translation; each translation is used at most once.
LabeledSentence assign_marker_labels(const MarkedSentence& marked,
                                     Rational min_similarity = Rational(1, 2),
                                     std::size_t sentence_id = 0);

}  // namespace xlproj

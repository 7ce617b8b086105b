#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "xlproj/projection.hpp"

namespace xlproj {

// Sentence-aligned inputs of a corpus projection run. All vectors have the
// same length; `external_spans` is present iff candidates come from an
// external NER model.
struct CorpusInputs {
  std::vector<LabeledSentence> labeled;
  std::vector<Sentence> targets;
  std::vector<AlignmentSet> alignments;
  std::optional<std::vector<std::vector<EntitySpan>>> external_spans;

  std::size_t size() const { return targets.size(); }
  // Throws DataError on inconsistent lengths.
  void check_consistent() const;
};

enum class ErrorPolicy { kFail, kSkipSentence };

struct SentenceFailure {
  std::size_t sentence_id;
  std::string message;
};

struct CorpusResult {
  std::vector<LabeledSentence> sentences;
  std::vector<SentenceFailure> failures;  // ascending sentence id
};

// Projects sentence `index` of the corpus.
LabeledSentence project_sentence(const CorpusInputs& inputs, std::size_t index,
                                 const ProjectionConfig& cfg);

// Reference implementation: one sentence after another. Under kFail the
// first failing sentence's exception propagates.
CorpusResult project_corpus_serial(const CorpusInputs& inputs, const ProjectionConfig& cfg,
                                   ErrorPolicy policy = ErrorPolicy::kFail);

// OpenMP fan-out over sentences with `jobs` threads (0 = runtime default).
// Output is identical to project_corpus_serial for every jobs value,
// including which exception is raised under kFail.
CorpusResult project_corpus(const CorpusInputs& inputs, const ProjectionConfig& cfg,
                            ErrorPolicy policy = ErrorPolicy::kFail, int jobs = 0);

// Recovers labeled back-translated sentences from marker brackets.
std::vector<LabeledSentence> recover_marked_corpus(const std::vector<MarkedSentence>& marked,
                                                   Rational min_similarity);

}  // namespace xlproj

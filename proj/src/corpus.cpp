#include "xlproj/corpus.hpp"

#include <exception>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "xlproj/error.hpp"

namespace xlproj {

void CorpusInputs::check_consistent() const {
  const auto n = targets.size();
  auto check = [&](std::size_t count, const char* what) {
    if (count != n) {
      throw DataError(std::string(what) + " has " + std::to_string(count) +
                      " entries but the target corpus has " + std::to_string(n) + " sentences");
    }
  };
  check(labeled.size(), "labeled corpus");
  check(alignments.size(), "alignment file");
  if (external_spans) check(external_spans->size(), "span records");
}

LabeledSentence project_sentence(const CorpusInputs& inputs, std::size_t index,
                                 const ProjectionConfig& cfg) {
  std::optional<std::span<const EntitySpan>> external;
  if (inputs.external_spans) external = std::span<const EntitySpan>((*inputs.external_spans)[index]);
  return project(inputs.labeled[index], inputs.targets[index], inputs.alignments[index], cfg,
                 external);
}

CorpusResult project_corpus_serial(const CorpusInputs& inputs, const ProjectionConfig& cfg,
                                   ErrorPolicy policy) {
  inputs.check_consistent();
  cfg.validate();
  CorpusResult out;
  out.sentences.reserve(inputs.size());
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    if (policy == ErrorPolicy::kFail) {
      out.sentences.push_back(project_sentence(inputs, i, cfg));
      continue;
    }
    try {
      out.sentences.push_back(project_sentence(inputs, i, cfg));
    } catch (const Error& e) {
      out.failures.push_back({inputs.targets[i].id, e.what()});
      out.sentences.push_back(LabeledSentence{inputs.targets[i], {}});
    }
  }
  return out;
}

CorpusResult project_corpus(const CorpusInputs& inputs, const ProjectionConfig& cfg,
                            ErrorPolicy policy, int jobs) {
  inputs.check_consistent();
  cfg.validate();
  const auto n = static_cast<std::ptrdiff_t>(inputs.size());
  std::vector<LabeledSentence> results(inputs.size());
  std::vector<std::exception_ptr> errors(inputs.size());

#ifdef _OPENMP
  const int threads = jobs > 0 ? jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 16) num_threads(threads)
#endif
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      results[i] = project_sentence(inputs, static_cast<std::size_t>(i), cfg);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }

  CorpusResult out;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    if (!errors[i]) continue;
    if (policy == ErrorPolicy::kFail) std::rethrow_exception(errors[i]);
    try {
      std::rethrow_exception(errors[i]);
    } catch (const Error& e) {
      out.failures.push_back({inputs.targets[i].id, e.what()});
      results[i] = LabeledSentence{inputs.targets[i], {}};
    }
  }
  out.sentences = std::move(results);
  return out;
}

std::vector<LabeledSentence> recover_marked_corpus(const std::vector<MarkedSentence>& marked,
                                                   Rational min_similarity) {
  std::vector<LabeledSentence> out;
  out.reserve(marked.size());
  for (std::size_t i = 0; i < marked.size(); ++i) {
    out.push_back(assign_marker_labels(marked[i], min_similarity, i));
  }
  return out;
}

}  // namespace xlproj

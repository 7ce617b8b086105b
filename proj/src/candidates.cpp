#include "xlproj/candidates.hpp"

#include <algorithm>

#include "xlproj/error.hpp"

namespace xlproj {

bool CandidateSet::pairwise_disjoint() const {
  for (std::size_t i = 0; i < spans.size(); ++i) {
    for (std::size_t j = i + 1; j < spans.size(); ++j) {
      if (spans_overlap(spans[i], spans[j])) return false;
    }
  }
  return true;
}

CandidateSet ngram_candidates(const Sentence& sentence, NgramCap max_len) {
  if (max_len && *max_len == 0) {
    throw ConfigError("n-gram length cap must be at least 1");
  }
  const std::size_t n = sentence.size();
  if (n == 0) {
    throw DataError("sentence " + std::to_string(sentence.id) + " is empty");
  }
  const std::size_t cap = max_len ? std::min(*max_len, n) : n;

  CandidateSet out;
  out.sentence_id = sentence.id;
  out.sentence_length = n;
  out.source = CandidateSource::kNgram;
  for (std::size_t start = 0; start < n; ++start) {
    for (std::size_t len = 1; len <= cap && start + len <= n; ++len) {
      out.spans.push_back(EntitySpan{start, start + len, std::nullopt});
    }
  }
  return out;
}

CandidateSet external_candidates(const Sentence& sentence, std::span<const EntitySpan> spans) {
  CandidateSet out;
  out.sentence_id = sentence.id;
  out.sentence_length = sentence.size();
  out.source = CandidateSource::kExternalNer;
  for (const auto& s : spans) {
    if (!s.valid_in(sentence.size())) {
      throw DataError("sentence " + std::to_string(sentence.id) + ": candidate " + describe(s) +
                      " out of bounds for length " + std::to_string(sentence.size()));
    }
    out.spans.push_back(EntitySpan{s.start, s.end, std::nullopt});
  }
  std::sort(out.spans.begin(), out.spans.end(), span_less);
  out.spans.erase(std::unique(out.spans.begin(), out.spans.end()), out.spans.end());
  for (std::size_t i = 1; i < out.spans.size(); ++i) {
    if (spans_overlap(out.spans[i - 1], out.spans[i])) {
      throw DataError("sentence " + std::to_string(sentence.id) + ": external candidates " +
                      describe(out.spans[i - 1]) + " and " + describe(out.spans[i]) + " overlap");
    }
  }
  return out;
}

}  // namespace xlproj

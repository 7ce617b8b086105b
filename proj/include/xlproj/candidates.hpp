#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "xlproj/core.hpp"

namespace xlproj {

enum class CandidateSource { kNgram, kExternalNer };

// Target candidate spans for one sentence, sorted by (start, end), labels
// absent, no duplicates.
struct CandidateSet {
  std::size_t sentence_id = 0;
  std::size_t sentence_length = 0;
  std::vector<EntitySpan> spans;
  CandidateSource source = CandidateSource::kNgram;

  std::size_t size() const { return spans.size(); }
  bool pairwise_disjoint() const;
};

// nullopt means no length cap.
using NgramCap = std::optional<std::size_t>;
inline constexpr std::size_t kDefaultMaxNgram = 8;

// Every contiguous span of 1..max_len words.
CandidateSet ngram_candidates(const Sentence& sentence, NgramCap max_len = kDefaultMaxNgram);

// Externally predicted spans: bounds-checked, labels erased, deduplicated.
// Overlapping predictions are rejected.
CandidateSet external_candidates(const Sentence& sentence, std::span<const EntitySpan> spans);

}  // namespace xlproj

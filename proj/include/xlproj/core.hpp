#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace xlproj {

using WordIndex = std::size_t;

struct Sentence {
  std::size_t id = 0;
  std::vector<std::string> tokens;

  std::size_t size() const { return tokens.size(); }
  bool operator==(const Sentence&) const = default;
};

// Half-open word interval [start, end). An absent label marks an unlabeled
// candidate.
struct EntitySpan {
  WordIndex start = 0;
  WordIndex end = 0;
  std::optional<std::string> label;

  std::size_t length() const { return end - start; }
  bool valid_in(std::size_t sentence_length) const {
    return start < end && end <= sentence_length;
  }
  bool same_interval(const EntitySpan& other) const {
    return start == other.start && end == other.end;
  }
  bool operator==(const EntitySpan&) const = default;
};

// Orders by (start, end), then absent label before any present one.
bool span_less(const EntitySpan& a, const EntitySpan& b);

std::string describe(const EntitySpan& span);

inline bool spans_overlap(const EntitySpan& a, const EntitySpan& b) {
  return a.start < b.end && b.start < a.end;
}

struct AlignmentPair {
  WordIndex labeled = 0;
  WordIndex target = 0;

  auto operator<=>(const AlignmentPair&) const = default;
};

// Word alignment between the labeled side and the target side, kept sorted
// by (labeled, target) with duplicates collapsed.
class AlignmentSet {
 public:
  AlignmentSet() = default;
  explicit AlignmentSet(std::vector<AlignmentPair> pairs);

  const std::vector<AlignmentPair>& pairs() const { return pairs_; }
  std::size_t size() const { return pairs_.size(); }
  bool empty() const { return pairs_.empty(); }

  // Number of pairs with labeled index in `labeled` and target index in `target`.
  std::size_t count_between(const EntitySpan& labeled, const EntitySpan& target) const;

  // Sorted, unique target indices aligned to any labeled word in `labeled`.
  std::vector<WordIndex> targets_of(const EntitySpan& labeled) const;

  // Throws DataError when an index falls outside either sentence.
  void check_bounds(std::size_t labeled_length, std::size_t target_length) const;

  bool operator==(const AlignmentSet&) const = default;

 private:
  std::vector<AlignmentPair> pairs_;
};

struct LabeledSentence {
  Sentence sentence;
  std::vector<EntitySpan> entities;

  // Throws DataError unless entities are labeled, in bounds, sorted and
  // pairwise disjoint.
  void validate() const;
  bool operator==(const LabeledSentence&) const = default;
};

// One tag per word: B-<label>, I-<label> or O.
std::vector<std::string> bio_encode(std::span<const EntitySpan> entities, std::size_t length);

// Lenient decoding: an I- tag that does not continue a span of the same
// label opens a new one.
std::vector<EntitySpan> bio_decode(std::span<const std::string> tags);

}  // namespace xlproj

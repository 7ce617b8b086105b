#include "xlproj/core.hpp"

#include <algorithm>
#include <tuple>

#include "xlproj/error.hpp"

namespace xlproj {

bool span_less(const EntitySpan& a, const EntitySpan& b) {
  return std::tie(a.start, a.end, a.label) < std::tie(b.start, b.end, b.label);
}

std::string describe(const EntitySpan& span) {
  std::string out = "(" + std::to_string(span.start) + "," + std::to_string(span.end);
  if (span.label) out += "," + *span.label;
  return out + ")";
}

AlignmentSet::AlignmentSet(std::vector<AlignmentPair> pairs) : pairs_(std::move(pairs)) {
  std::sort(pairs_.begin(), pairs_.end());
  pairs_.erase(std::unique(pairs_.begin(), pairs_.end()), pairs_.end());
}

std::size_t AlignmentSet::count_between(const EntitySpan& labeled, const EntitySpan& target) const {
  auto first = std::lower_bound(pairs_.begin(), pairs_.end(), AlignmentPair{labeled.start, 0});
  std::size_t count = 0;
  for (auto it = first; it != pairs_.end() && it->labeled < labeled.end; ++it) {
    if (it->target >= target.start && it->target < target.end) ++count;
  }
  return count;
}

std::vector<WordIndex> AlignmentSet::targets_of(const EntitySpan& labeled) const {
  std::vector<WordIndex> out;
  auto first = std::lower_bound(pairs_.begin(), pairs_.end(), AlignmentPair{labeled.start, 0});
  for (auto it = first; it != pairs_.end() && it->labeled < labeled.end; ++it) {
    out.push_back(it->target);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void AlignmentSet::check_bounds(std::size_t labeled_length, std::size_t target_length) const {
  for (const auto& p : pairs_) {
    if (p.labeled >= labeled_length || p.target >= target_length) {
      throw DataError("alignment " + std::to_string(p.labeled) + "-" + std::to_string(p.target) +
                      " out of bounds for sentence lengths " + std::to_string(labeled_length) +
                      " and " + std::to_string(target_length));
    }
  }
}

void LabeledSentence::validate() const {
  const auto n = sentence.size();
  for (std::size_t i = 0; i < entities.size(); ++i) {
    const auto& e = entities[i];
    if (!e.valid_in(n)) {
      throw DataError("sentence " + std::to_string(sentence.id) + ": entity " + describe(e) +
                      " invalid for length " + std::to_string(n));
    }
    if (!e.label || e.label->empty()) {
      throw DataError("sentence " + std::to_string(sentence.id) + ": entity " + describe(e) +
                      " has no label");
    }
    if (i > 0 && entities[i - 1].end > e.start) {
      throw DataError("sentence " + std::to_string(sentence.id) + ": entities " +
                      describe(entities[i - 1]) + " and " + describe(e) +
                      " overlap or are out of order");
    }
  }
}

std::vector<std::string> bio_encode(std::span<const EntitySpan> entities, std::size_t length) {
  std::vector<std::string> tags(length, "O");
  std::vector<bool> used(length, false);
  for (const auto& e : entities) {
    if (!e.valid_in(length)) {
      throw DataError("entity " + describe(e) + " invalid for length " + std::to_string(length));
    }
    if (!e.label || e.label->empty()) {
      throw DataError("entity " + describe(e) + " has no label");
    }
    for (auto i = e.start; i < e.end; ++i) {
      if (used[i]) {
        throw DataError("overlapping entities at word " + std::to_string(i));
      }
      used[i] = true;
      tags[i] = (i == e.start ? "B-" : "I-") + *e.label;
    }
  }
  return tags;
}

std::vector<EntitySpan> bio_decode(std::span<const std::string> tags) {
  std::vector<EntitySpan> out;
  std::optional<EntitySpan> open;
  auto close = [&] {
    if (open) out.push_back(std::move(*open));
    open.reset();
  };
  for (std::size_t i = 0; i < tags.size(); ++i) {
    const auto& tag = tags[i];
    if (tag == "O") {
      close();
      continue;
    }
    if (tag.size() < 3 || tag[1] != '-' || (tag[0] != 'B' && tag[0] != 'I')) {
      throw FormatError("invalid BIO tag '" + tag + "'");
    }
    std::string label = tag.substr(2);
    if (tag[0] == 'I' && open && open->label == label) {
      open->end = i + 1;
      continue;
    }
    close();
    open = EntitySpan{i, i + 1, std::move(label)};
  }
  close();
  return out;
}

}  // namespace xlproj

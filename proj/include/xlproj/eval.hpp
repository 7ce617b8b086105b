#pragma once

#include <cstddef>
#include <map>
#include <string>

#include <nlohmann/json.hpp>

#include "xlproj/io.hpp"
#include "xlproj/rational.hpp"

namespace xlproj {

// Exact-match span counts. Every ratio with a zero denominator is 0.
struct SpanCounts {
  std::size_t true_positives = 0;
  std::size_t false_positives = 0;
  std::size_t false_negatives = 0;

  Rational precision() const;
  Rational recall() const;
  Rational f1() const;

  SpanCounts& operator+=(const SpanCounts& other);
  bool operator==(const SpanCounts&) const = default;
};

struct EvalReport {
  SpanCounts micro;
  std::map<std::string, SpanCounts> per_label;
};

// Micro-averaged span precision/recall/F1. Throws DataError when the corpora
// differ in sentence count or tokenization.
EvalReport evaluate(const CorpusDocument& predicted, const CorpusDocument& gold);

std::string render_text(const EvalReport& report);
nlohmann::ordered_json to_json(const EvalReport& report);

}  // namespace xlproj

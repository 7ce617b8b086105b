#include "xlproj/eval.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

#include "xlproj/error.hpp"

namespace xlproj {

namespace {

Rational ratio(std::size_t num, std::size_t den) {
  if (den == 0) return Rational(0);
  return Rational(static_cast<std::int64_t>(num), static_cast<std::int64_t>(den));
}

}  // namespace

Rational SpanCounts::precision() const {
  return ratio(true_positives, true_positives + false_positives);
}

Rational SpanCounts::recall() const {
  return ratio(true_positives, true_positives + false_negatives);
}

Rational SpanCounts::f1() const {
  const auto p = precision();
  const auto r = recall();
  if (p + r == 0) return Rational(0);
  return 2 * p * r / (p + r);
}

SpanCounts& SpanCounts::operator+=(const SpanCounts& other) {
  true_positives += other.true_positives;
  false_positives += other.false_positives;
  false_negatives += other.false_negatives;
  return *this;
}

EvalReport evaluate(const CorpusDocument& predicted, const CorpusDocument& gold) {
  if (predicted.sentences.size() != gold.sentences.size()) {
    throw DataError("predicted corpus has " + std::to_string(predicted.sentences.size()) +
                    " sentences, gold has " + std::to_string(gold.sentences.size()));
  }
  EvalReport report;
  for (std::size_t i = 0; i < gold.sentences.size(); ++i) {
    const auto& p = predicted.sentences[i];
    const auto& g = gold.sentences[i];
    if (p.sentence.tokens != g.sentence.tokens) {
      throw DataError("sentence " + std::to_string(i) + ": tokens differ between corpora");
    }
    for (const auto& span : p.entities) {
      auto& counts = report.per_label[span.label.value_or("")];
      if (std::find(g.entities.begin(), g.entities.end(), span) != g.entities.end()) {
        ++counts.true_positives;
      } else {
        ++counts.false_positives;
      }
    }
    for (const auto& span : g.entities) {
      if (std::find(p.entities.begin(), p.entities.end(), span) == p.entities.end()) {
        ++report.per_label[span.label.value_or("")].false_negatives;
      }
    }
  }
  for (const auto& [_, counts] : report.per_label) report.micro += counts;
  return report;
}

std::string render_text(const EvalReport& report) {
  std::ostringstream out;
  auto row = [&](const std::string& name, const SpanCounts& c) {
    out << std::left << std::setw(10) << name << std::right << std::setw(7) << c.true_positives
        << std::setw(7) << c.false_positives << std::setw(7) << c.false_negatives << std::fixed
        << std::setprecision(4) << std::setw(11) << to_double(c.precision()) << std::setw(11)
        << to_double(c.recall()) << std::setw(11) << to_double(c.f1()) << "\n";
  };
  out << std::left << std::setw(10) << "label" << std::right << std::setw(7) << "tp"
      << std::setw(7) << "fp" << std::setw(7) << "fn" << std::setw(11) << "precision"
      << std::setw(11) << "recall" << std::setw(11) << "f1" << "\n";
  for (const auto& [label, counts] : report.per_label) row(label, counts);
  row("micro", report.micro);
  return out.str();
}

nlohmann::ordered_json to_json(const EvalReport& report) {
  auto fields = [](const SpanCounts& c) {
    nlohmann::ordered_json j;
    j["true_positives"] = c.true_positives;
    j["false_positives"] = c.false_positives;
    j["false_negatives"] = c.false_negatives;
    j["precision"] = to_double(c.precision());
    j["recall"] = to_double(c.recall());
    j["f1"] = to_double(c.f1());
    j["precision_exact"] = to_string(c.precision());
    j["recall_exact"] = to_string(c.recall());
    j["f1_exact"] = to_string(c.f1());
    return j;
  };
  nlohmann::ordered_json j = fields(report.micro);
  j["per_label"] = nlohmann::ordered_json::object();
  for (const auto& [label, counts] : report.per_label) j["per_label"][label] = fields(counts);
  return j;
}

}  // namespace xlproj

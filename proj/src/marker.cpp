#include <algorithm>
#include <locale>
#include <tuple>

#include "xlproj/io.hpp"
#include "xlproj/projection.hpp"

namespace xlproj {

namespace {

const std::locale& folding_locale() {
  static const std::locale loc = [] {
    try {
      return std::locale("C.UTF-8");
    } catch (const std::runtime_error&) {
      return std::locale::classic();
    }
  }();
  return loc;
}

std::u32string case_fold(std::string_view text) {
  const auto& ctype = std::use_facet<std::ctype<wchar_t>>(folding_locale());
  std::u32string out = decode_utf8(text);
  for (auto& cp : out) {
    cp = static_cast<char32_t>(ctype.tolower(static_cast<wchar_t>(cp)));
  }
  return out;
}

std::size_t edit_distance(const std::u32string& a, const std::u32string& b) {
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t subst = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, subst});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

std::string join_tokens(const std::vector<std::string>& tokens, const EntitySpan& span) {
  std::string out;
  for (auto i = span.start; i < span.end; ++i) {
    if (i > span.start) out += ' ';
    out += tokens[i];
  }
  return out;
}

}  // namespace

Rational fuzzy_similarity(std::string_view a, std::string_view b) {
  const auto fa = case_fold(a);
  const auto fb = case_fold(b);
  const auto longest = std::max(fa.size(), fb.size());
  if (longest == 0) return Rational(1);
  const auto distance = edit_distance(fa, fb);
  return Rational(static_cast<std::int64_t>(longest - distance), static_cast<std::int64_t>(longest));
}

LabeledSentence assign_marker_labels(const MarkedSentence& marked, Rational min_similarity,
                                     std::size_t sentence_id) {
  LabeledSentence out;
  out.sentence.id = sentence_id;
  out.sentence.tokens = marked.tokens;

  struct Pair {
    Rational similarity;
    std::size_t bracket;
    std::size_t translation;
  };
  std::vector<Pair> pairs;
  for (std::size_t b = 0; b < marked.bracket_spans.size(); ++b) {
    const auto text = join_tokens(marked.tokens, marked.bracket_spans[b]);
    for (std::size_t t = 0; t < marked.entity_translations.size(); ++t) {
      auto sim = fuzzy_similarity(text, marked.entity_translations[t].text);
      if (sim >= min_similarity) pairs.push_back({sim, b, t});
    }
  }
  std::sort(pairs.begin(), pairs.end(), [](const Pair& x, const Pair& y) {
    if (x.similarity != y.similarity) return x.similarity > y.similarity;
    return std::tie(x.bracket, x.translation) < std::tie(y.bracket, y.translation);
  });

  std::vector<bool> bracket_done(marked.bracket_spans.size(), false);
  std::vector<bool> translation_used(marked.entity_translations.size(), false);
  for (const auto& p : pairs) {
    if (bracket_done[p.bracket] || translation_used[p.translation]) continue;
    bracket_done[p.bracket] = true;
    translation_used[p.translation] = true;
    EntitySpan span = marked.bracket_spans[p.bracket];
    span.label = marked.entity_translations[p.translation].label;
    out.entities.push_back(std::move(span));
  }
  std::sort(out.entities.begin(), out.entities.end(), span_less);
  return out;
}

}  // namespace xlproj

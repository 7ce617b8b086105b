#pragma once

// Seeded random instance generators shared by the property tests and the
// acceptance suite.

#include <algorithm>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "xlproj/candidates.hpp"
#include "xlproj/core.hpp"
#include "xlproj/io.hpp"
#include "xlproj/matching.hpp"

namespace gen {

using Rng = std::mt19937_64;

inline std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline const std::vector<std::string>& labels() {
  static const std::vector<std::string> kLabels = {"PER", "LOC", "ORG", "MISC"};
  return kLabels;
}

// Sorted, pairwise disjoint labeled spans inside [0, length).
inline std::vector<xlproj::EntitySpan> disjoint_spans(Rng& rng, std::size_t length,
                                                      std::size_t max_count, bool labeled = true) {
  std::vector<xlproj::EntitySpan> out;
  std::size_t pos = 0;
  while (pos < length && out.size() < max_count) {
    pos += uniform(rng, 0, 3);
    if (pos >= length) break;
    const std::size_t len = uniform(rng, 1, std::min<std::size_t>(4, length - pos));
    xlproj::EntitySpan s{pos, pos + len, std::nullopt};
    if (labeled) s.label = labels()[uniform(rng, 0, labels().size() - 1)];
    out.push_back(s);
    pos += len;
  }
  return out;
}

// Random, possibly overlapping, distinct intervals inside [0, length).
inline std::vector<xlproj::EntitySpan> random_intervals(Rng& rng, std::size_t length,
                                                        std::size_t count) {
  std::vector<xlproj::EntitySpan> out;
  std::size_t attempts = 0;
  while (out.size() < count && attempts++ < 200) {
    const std::size_t start = uniform(rng, 0, length - 1);
    const std::size_t len = uniform(rng, 1, std::min<std::size_t>(5, length - start));
    xlproj::EntitySpan s{start, start + len, std::nullopt};
    if (std::none_of(out.begin(), out.end(), [&](const auto& e) { return e.same_interval(s); })) {
      out.push_back(s);
    }
  }
  std::sort(out.begin(), out.end(), xlproj::span_less);
  return out;
}

// A random partial one-to-one alignment between sentences of the given
// lengths.
inline xlproj::AlignmentSet one_to_one_alignment(Rng& rng, std::size_t labeled_len,
                                                 std::size_t target_len, double density = 0.7) {
  std::vector<std::size_t> targets(target_len);
  std::iota(targets.begin(), targets.end(), 0);
  std::shuffle(targets.begin(), targets.end(), rng);
  std::bernoulli_distribution keep(density);
  std::vector<xlproj::AlignmentPair> pairs;
  for (std::size_t i = 0; i < std::min(labeled_len, target_len); ++i) {
    if (keep(rng)) pairs.push_back({i, targets[i]});
  }
  return xlproj::AlignmentSet(std::move(pairs));
}

inline xlproj::Sentence sentence(Rng& rng, std::size_t id, std::size_t length) {
  static const std::vector<std::string> kWords = {"der", "Haus", "river", "Ünïcödé", "x",
                                                  "New", "York", "城市", "a-b", "word"};
  xlproj::Sentence s;
  s.id = id;
  for (std::size_t i = 0; i < length; ++i) s.tokens.push_back(kWords[uniform(rng, 0, kWords.size() - 1)]);
  return s;
}

inline xlproj::CorpusDocument document(Rng& rng, std::size_t max_sentences) {
  xlproj::CorpusDocument doc;
  const std::size_t n = uniform(rng, 0, max_sentences);
  for (std::size_t i = 0; i < n; ++i) {
    auto s = sentence(rng, i, uniform(rng, 1, 12));
    auto entities = disjoint_spans(rng, s.size(), 4);
    doc.sentences.push_back(xlproj::LabeledSentence{std::move(s), std::move(entities)});
  }
  return doc;
}

// Matching problem over real spans with alignment-derived costs.
inline xlproj::MatchingProblem aligned_problem(Rng& rng, std::size_t max_sources,
                                               std::size_t max_candidates, bool disjoint_candidates,
                                               xlproj::MatchMode mode = xlproj::MatchMode::kAtMostOne) {
  const std::size_t src_len = uniform(rng, 2, 14);
  const std::size_t tgt_len = uniform(rng, 2, 14);
  xlproj::LabeledSentence labeled;
  labeled.sentence = sentence(rng, 0, src_len);
  labeled.entities = disjoint_spans(rng, src_len, max_sources);
  xlproj::CandidateSet cands;
  cands.sentence_length = tgt_len;
  cands.spans = disjoint_candidates ? disjoint_spans(rng, tgt_len, max_candidates, false)
                                    : random_intervals(rng, tgt_len, uniform(rng, 0, max_candidates));
  if (!disjoint_candidates) cands.source = xlproj::CandidateSource::kNgram;
  else cands.source = xlproj::CandidateSource::kExternalNer;
  auto alignments = one_to_one_alignment(rng, src_len, tgt_len);
  return xlproj::build_problem(labeled, cands, alignments, mode);
}

// Matching problem with arbitrary small rational costs (not alignment
// derived), which exercises ties and dense positive matrices.
inline xlproj::MatchingProblem random_cost_problem(Rng& rng, std::size_t max_sources,
                                                   std::size_t max_candidates, bool disjoint,
                                                   xlproj::MatchMode mode) {
  const std::size_t tgt_len = 12;
  xlproj::CandidateSet cands;
  cands.sentence_length = tgt_len;
  cands.spans = disjoint ? disjoint_spans(rng, tgt_len, max_candidates, false)
                         : random_intervals(rng, tgt_len, uniform(rng, 0, max_candidates));
  std::vector<xlproj::EntitySpan> sources;
  const std::size_t s_count = uniform(rng, 0, max_sources);
  for (std::size_t s = 0; s < s_count; ++s) sources.push_back({2 * s, 2 * s + 1, "PER"});
  xlproj::CostMatrix costs(sources.size(), cands.size());
  for (std::size_t s = 0; s < costs.rows(); ++s) {
    for (std::size_t t = 0; t < costs.cols(); ++t) {
      // About a third of the cells are zero; the rest share few values so ties happen.
      const auto num = static_cast<std::int64_t>(uniform(rng, 0, 5));
      costs(s, t) = num < 2 ? xlproj::Rational(0)
                            : xlproj::Rational(num, static_cast<std::int64_t>(uniform(rng, 4, 8)));
    }
  }
  return xlproj::make_problem(std::move(sources), std::move(cands), std::move(costs), mode);
}

// A plausible prediction derived from gold: some spans dropped, relabeled or
// widened by one token, kept pairwise disjoint.
inline xlproj::CorpusDocument perturb(Rng& rng, const xlproj::CorpusDocument& gold) {
  xlproj::CorpusDocument pred = gold;
  for (auto& ls : pred.sentences) {
    std::vector<xlproj::EntitySpan> kept;
    for (auto e : ls.entities) {
      switch (uniform(rng, 0, 5)) {
        case 0:
          continue;
        case 1:
          e.label = labels()[uniform(rng, 0, labels().size() - 1)];
          break;
        case 2:
          if (e.end < ls.sentence.size()) ++e.end;
          break;
        default:
          break;
      }
      if (kept.empty() || !xlproj::spans_overlap(kept.back(), e)) kept.push_back(e);
    }
    ls.entities = std::move(kept);
  }
  return pred;
}

}  // namespace gen

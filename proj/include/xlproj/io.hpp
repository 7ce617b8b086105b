#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "xlproj/core.hpp"

namespace xlproj {

// Sentences in file order; ids are 0..n-1.
struct CorpusDocument {
  std::vector<LabeledSentence> sentences;

  bool operator==(const CorpusDocument&) const = default;
};

struct EntityTranslation {
  std::string label;
  std::string text;

  bool operator==(const EntityTranslation&) const = default;
};

// A back-translated sentence with its `[` `]` markers removed.
struct MarkedSentence {
  std::vector<std::string> tokens;
  std::vector<EntitySpan> bracket_spans;
  std::vector<EntityTranslation> entity_translations;
};

// UTF-8 helpers. Decoding throws FormatError on malformed input.
bool is_valid_utf8(std::string_view text);
std::u32string decode_utf8(std::string_view text);
std::string encode_utf8(std::u32string_view text);
bool is_unicode_space(char32_t cp);
std::vector<std::string> split_unicode_whitespace(std::string_view text);

// CoNLL: `token<SP|TAB>tag` lines, blank line between sentences. Lines
// without a tag read as O.
CorpusDocument parse_conll(std::istream& in);
CorpusDocument parse_conll(std::string_view text);
std::string serialize_conll(const CorpusDocument& doc);

// Pharaoh: whitespace-separated `i-j` pairs.
AlignmentSet parse_pharaoh(std::string_view line);
std::string serialize_pharaoh(const AlignmentSet& alignments);
// One Pharaoh line per sentence.
std::vector<AlignmentSet> parse_alignment_file(std::istream& in);

// JSON Lines: {"sentence_id": int, "spans": [{"start", "end", "label"?}]}.
// Repeated ids are merged; duplicate intervals are dropped.
std::map<std::size_t, std::vector<EntitySpan>> parse_span_records(std::istream& in);
std::map<std::size_t, std::vector<EntitySpan>> parse_span_records(std::string_view text);
std::string serialize_span_record(std::size_t sentence_id, std::span<const EntitySpan> spans);

MarkedSentence parse_marked_sentence(std::string_view raw,
                                     std::vector<EntityTranslation> entity_translations = {});

// `label<TAB>text` entries separated by `|||`.
std::vector<EntityTranslation> parse_translations_line(std::string_view line);

// Reads every line of a stream (getline semantics), stripping a trailing CR.
std::vector<std::string> read_lines(std::istream& in);

}  // namespace xlproj

#include "xlproj/io.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "xlproj/error.hpp"

namespace xlproj {

namespace {

// Returns the code point starting at text[pos] and advances pos, or throws.
char32_t next_code_point(std::string_view text, std::size_t& pos) {
  auto byte = [&](std::size_t i) { return static_cast<unsigned char>(text[i]); };
  const unsigned char lead = byte(pos);
  std::size_t extra = 0;
  char32_t cp = 0;
  if (lead < 0x80) {
    ++pos;
    return lead;
  } else if ((lead & 0xE0) == 0xC0) {
    extra = 1;
    cp = lead & 0x1F;
  } else if ((lead & 0xF0) == 0xE0) {
    extra = 2;
    cp = lead & 0x0F;
  } else if ((lead & 0xF8) == 0xF0) {
    extra = 3;
    cp = lead & 0x07;
  } else {
    throw FormatError("malformed UTF-8 lead byte at offset " + std::to_string(pos));
  }
  if (pos + extra >= text.size()) {
    throw FormatError("truncated UTF-8 sequence at offset " + std::to_string(pos));
  }
  for (std::size_t i = 1; i <= extra; ++i) {
    const unsigned char cont = byte(pos + i);
    if ((cont & 0xC0) != 0x80) {
      throw FormatError("malformed UTF-8 continuation byte at offset " + std::to_string(pos + i));
    }
    cp = (cp << 6) | (cont & 0x3F);
  }
  static constexpr char32_t kMinForLength[] = {0, 0x80, 0x800, 0x10000};
  if (cp < kMinForLength[extra] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
    throw FormatError("invalid UTF-8 code point at offset " + std::to_string(pos));
  }
  pos += extra + 1;
  return cp;
}

void check_utf8(std::string_view text, std::size_t line_no) {
  try {
    std::size_t pos = 0;
    while (pos < text.size()) next_code_point(text, pos);
  } catch (const FormatError& e) {
    throw FormatError(e.what(), line_no);
  }
}

std::vector<std::string_view> split_ascii_whitespace(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < text.size() && text[j] != ' ' && text[j] != '\t') ++j;
    if (j > i) out.push_back(text.substr(i, j - i));
    i = j;
  }
  return out;
}

bool is_bio_tag(std::string_view tag) {
  if (tag == "O") return true;
  return tag.size() >= 3 && (tag[0] == 'B' || tag[0] == 'I') && tag[1] == '-';
}

std::string_view trim(std::string_view s) {
  auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

}  // namespace

bool is_valid_utf8(std::string_view text) {
  try {
    std::size_t pos = 0;
    while (pos < text.size()) next_code_point(text, pos);
    return true;
  } catch (const FormatError&) {
    return false;
  }
}

std::u32string decode_utf8(std::string_view text) {
  std::u32string out;
  std::size_t pos = 0;
  while (pos < text.size()) out.push_back(next_code_point(text, pos));
  return out;
}

std::string encode_utf8(std::u32string_view text) {
  std::string out;
  for (char32_t cp : text) {
    if (cp < 0x80) {
      out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
      out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
      out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
      out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
  }
  return out;
}

bool is_unicode_space(char32_t cp) {
  switch (cp) {
    case 0x09: case 0x0A: case 0x0B: case 0x0C: case 0x0D: case 0x20:
    case 0x85: case 0xA0: case 0x1680: case 0x2028: case 0x2029:
    case 0x202F: case 0x205F: case 0x3000:
      return true;
    default:
      return cp >= 0x2000 && cp <= 0x200A;
  }
}

std::vector<std::string> split_unicode_whitespace(std::string_view text) {
  std::vector<std::string> out;
  std::u32string current;
  for (char32_t cp : decode_utf8(text)) {
    if (is_unicode_space(cp)) {
      if (!current.empty()) out.push_back(encode_utf8(current));
      current.clear();
    } else {
      current.push_back(cp);
    }
  }
  if (!current.empty()) out.push_back(encode_utf8(current));
  return out;
}

std::vector<std::string> read_lines(std::istream& in) {
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
  }
  return lines;
}

CorpusDocument parse_conll(std::istream& in) {
  CorpusDocument doc;
  std::vector<std::string> tokens;
  std::vector<std::string> tags;

  auto flush = [&] {
    if (tokens.empty()) return;
    LabeledSentence ls;
    ls.sentence.id = doc.sentences.size();
    ls.sentence.tokens = std::move(tokens);
    ls.entities = bio_decode(tags);
    doc.sentences.push_back(std::move(ls));
    tokens.clear();
    tags.clear();
  };

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    check_utf8(line, line_no);
    auto fields = split_ascii_whitespace(line);
    if (fields.empty()) {
      flush();
      continue;
    }
    if (fields.size() > 2) {
      throw FormatError("expected 'token tag', found " + std::to_string(fields.size()) + " fields",
                        line_no);
    }
    std::string_view tag = fields.size() == 2 ? fields[1] : std::string_view("O");
    if (!is_bio_tag(tag)) {
      throw FormatError("invalid BIO tag '" + std::string(tag) + "'", line_no);
    }
    tokens.emplace_back(fields[0]);
    tags.emplace_back(tag);
  }
  flush();
  return doc;
}

CorpusDocument parse_conll(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_conll(in);
}

std::string serialize_conll(const CorpusDocument& doc) {
  std::string out;
  for (const auto& ls : doc.sentences) {
    auto tags = bio_encode(ls.entities, ls.sentence.size());
    for (std::size_t i = 0; i < tags.size(); ++i) {
      out += ls.sentence.tokens[i];
      out += ' ';
      out += tags[i];
      out += '\n';
    }
    out += '\n';
  }
  return out;
}

AlignmentSet parse_pharaoh(std::string_view line) {
  std::vector<AlignmentPair> pairs;
  for (auto token : split_ascii_whitespace(line)) {
    auto dash = token.find('-');
    auto read = [&](std::string_view digits, std::size_t& value) {
      if (digits.empty() || digits.find_first_not_of("0123456789") != std::string_view::npos) {
        return false;
      }
      auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
      return ec == std::errc{} && ptr == digits.data() + digits.size();
    };
    AlignmentPair pair;
    if (dash == std::string_view::npos || !read(token.substr(0, dash), pair.labeled) ||
        !read(token.substr(dash + 1), pair.target)) {
      throw FormatError("invalid alignment token '" + std::string(token) + "'");
    }
    pairs.push_back(pair);
  }
  return AlignmentSet(std::move(pairs));
}

std::string serialize_pharaoh(const AlignmentSet& alignments) {
  std::string out;
  for (const auto& p : alignments.pairs()) {
    if (!out.empty()) out += ' ';
    out += std::to_string(p.labeled) + "-" + std::to_string(p.target);
  }
  return out;
}

std::vector<AlignmentSet> parse_alignment_file(std::istream& in) {
  std::vector<AlignmentSet> out;
  std::size_t line_no = 0;
  for (const auto& line : read_lines(in)) {
    ++line_no;
    try {
      out.push_back(parse_pharaoh(line));
    } catch (const FormatError& e) {
      throw FormatError(e.what(), line_no);
    }
  }
  return out;
}

namespace {

std::size_t read_index(const nlohmann::json& value, const char* field, std::size_t line_no) {
  if (!value.is_number_integer()) {
    throw FormatError(std::string("field '") + field + "' must be an integer", line_no);
  }
  if (value.get<std::int64_t>() < 0) {
    throw FormatError(std::string("field '") + field + "' is negative", line_no);
  }
  return value.get<std::size_t>();
}

}  // namespace

std::map<std::size_t, std::vector<EntitySpan>> parse_span_records(std::istream& in) {
  std::map<std::size_t, std::vector<EntitySpan>> out;
  std::size_t line_no = 0;
  for (const auto& line : read_lines(in)) {
    ++line_no;
    if (trim(line).empty()) continue;
    check_utf8(line, line_no);
    nlohmann::json record;
    try {
      record = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw FormatError(std::string("malformed JSON record: ") + e.what(), line_no);
    }
    if (!record.is_object() || !record.contains("sentence_id") || !record.contains("spans")) {
      throw FormatError("record needs 'sentence_id' and 'spans'", line_no);
    }
    for (const auto& [key, _] : record.items()) {
      if (key != "sentence_id" && key != "spans") {
        throw FormatError("unknown record field '" + key + "'", line_no);
      }
    }
    const auto id = read_index(record["sentence_id"], "sentence_id", line_no);
    const auto& spans = record["spans"];
    if (!spans.is_array()) throw FormatError("'spans' must be an array", line_no);
    auto& list = out[id];
    for (const auto& s : spans) {
      if (!s.is_object() || !s.contains("start") || !s.contains("end")) {
        throw FormatError("span needs 'start' and 'end'", line_no);
      }
      EntitySpan span{read_index(s["start"], "start", line_no), read_index(s["end"], "end", line_no),
                      std::nullopt};
      if (span.end <= span.start) {
        throw FormatError("empty span " + describe(span), line_no);
      }
      if (s.contains("label")) {
        if (!s["label"].is_string()) throw FormatError("'label' must be a string", line_no);
        span.label = s["label"].get<std::string>();
      }
      const bool duplicate = std::any_of(list.begin(), list.end(),
                                         [&](const EntitySpan& e) { return e.same_interval(span); });
      if (!duplicate) list.push_back(std::move(span));
    }
  }
  for (auto& [_, list] : out) {
    std::sort(list.begin(), list.end(), span_less);
  }
  return out;
}

std::map<std::size_t, std::vector<EntitySpan>> parse_span_records(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_span_records(in);
}

std::string serialize_span_record(std::size_t sentence_id, std::span<const EntitySpan> spans) {
  nlohmann::ordered_json record;
  record["sentence_id"] = sentence_id;
  record["spans"] = nlohmann::ordered_json::array();
  for (const auto& s : spans) {
    nlohmann::ordered_json js;
    js["start"] = s.start;
    js["end"] = s.end;
    if (s.label) js["label"] = *s.label;
    record["spans"].push_back(std::move(js));
  }
  return record.dump();
}

MarkedSentence parse_marked_sentence(std::string_view raw,
                                     std::vector<EntityTranslation> entity_translations) {
  MarkedSentence out;
  out.entity_translations = std::move(entity_translations);

  std::u32string current;
  std::optional<std::size_t> open_start;
  auto finish_token = [&] {
    if (!current.empty()) out.tokens.push_back(encode_utf8(current));
    current.clear();
  };

  for (char32_t cp : decode_utf8(raw)) {
    if (is_unicode_space(cp)) {
      finish_token();
    } else if (cp == U'[') {
      if (open_start) throw FormatError("nested '[' in marked sentence");
      finish_token();
      open_start = out.tokens.size();
    } else if (cp == U']') {
      if (!open_start) throw FormatError("unbalanced ']' in marked sentence");
      finish_token();
      const std::size_t end = out.tokens.size();
      if (end == *open_start) throw FormatError("empty bracket pair in marked sentence");
      out.bracket_spans.push_back(EntitySpan{*open_start, end, std::nullopt});
      open_start.reset();
    } else {
      current.push_back(cp);
    }
  }
  finish_token();
  if (open_start) throw FormatError("unclosed '[' in marked sentence");
  return out;
}

std::vector<EntityTranslation> parse_translations_line(std::string_view line) {
  std::vector<EntityTranslation> out;
  if (trim(line).empty()) return out;
  if (!is_valid_utf8(line)) throw FormatError("malformed UTF-8 in translations line");
  std::size_t pos = 0;
  while (true) {
    auto sep = line.find("|||", pos);
    auto entry = line.substr(pos, sep == std::string_view::npos ? std::string_view::npos : sep - pos);
    // Leading/trailing spaces around `|||` are not part of the entry.
    while (!entry.empty() && entry.front() == ' ') entry.remove_prefix(1);
    while (!entry.empty() && (entry.back() == ' ' || entry.back() == '\r')) entry.remove_suffix(1);
    auto tab = entry.find('\t');
    if (tab == std::string_view::npos || tab == 0) {
      throw FormatError("translation entry '" + std::string(entry) + "' is not 'label<TAB>text'");
    }
    out.push_back({std::string(entry.substr(0, tab)), std::string(trim(entry.substr(tab + 1)))});
    if (sep == std::string_view::npos) break;
    pos = sep + 3;
  }
  return out;
}

}  // namespace xlproj

#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "xlproj/corpus.hpp"

namespace xlproj::cli {

enum ExitCode : int {
  kSuccess = 0,
  kUsage = 1,
  kDataError = 2,
  kInfeasible = 3,
};

enum class Direction { kSrc2Tgt, kTgt2Tgt };

// Everything a `project` or `solve` run needs, fully resolved.
struct RunManifest {
  ProjectionConfig config;
  Direction direction = Direction::kSrc2Tgt;
  std::optional<std::string> labeled_path;
  std::string target_path;
  std::string align_path;
  std::optional<std::string> spans_path;
  std::optional<std::string> marked_path;
  std::optional<std::string> translations_path;
  std::optional<std::string> out_path;
  int jobs = 0;
  bool skip_bad_sentences = false;
};

// Parses `key=value` lines; `#` starts a comment. Throws ConfigError.
std::map<std::string, std::string> parse_config_text(const std::string& text);

// Reads and cross-checks every input file named by the manifest.
CorpusInputs load_inputs(const RunManifest& manifest);

// Writes `contents` to a temporary sibling file and renames it over `path`.
void write_atomically(const std::string& path, const std::string& contents);

// Full command-line entry point; args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace xlproj::cli

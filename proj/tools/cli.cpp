#include "cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include <unistd.h>

#include <CLI11.hpp>

#include "xlproj/error.hpp"
#include "xlproj/eval.hpp"
#include "xlproj/io.hpp"

namespace xlproj::cli {

namespace {

const std::set<std::string> kConfigKeys = {
    "method", "candidates", "solver", "mode", "threshold", "max_ngram",
    "min_similarity", "direction", "jobs", "skip_bad_sentences",
};

std::string read_file(const std::string& path, const char* role) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError(std::string("cannot open ") + role + " file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

template <typename Fn>
auto with_file_context(const std::string& path, Fn&& fn) {
  try {
    return fn();
  } catch (const FormatError& e) {
    throw FormatError(path + ": " + e.what());
  }
}

ProjectionMethod parse_method(const std::string& v) {
  if (v == "heuristic") return ProjectionMethod::kHeuristic;
  if (v == "matching") return ProjectionMethod::kCandidateMatching;
  throw ConfigError("--method must be heuristic or matching, got '" + v + "'");
}

CandidateSource parse_candidate_source(const std::string& v) {
  if (v == "ngram") return CandidateSource::kNgram;
  if (v == "ner") return CandidateSource::kExternalNer;
  throw ConfigError("--candidates must be ngram or ner, got '" + v + "'");
}

SolverKind parse_solver(const std::string& v) {
  if (v == "greedy") return SolverKind::kGreedy;
  if (v == "brute") return SolverKind::kBruteForce;
  if (v == "assignment") return SolverKind::kAssignment;
  if (v == "mwis") return SolverKind::kRelaxedMwis;
  throw ConfigError("--solver must be greedy, brute, assignment or mwis, got '" + v + "'");
}

MatchMode parse_mode(const std::string& v) {
  if (v == "atmost") return MatchMode::kAtMostOne;
  if (v == "all") return MatchMode::kRequireAll;
  throw ConfigError("--mode must be atmost or all, got '" + v + "'");
}

Direction parse_direction(const std::string& v) {
  if (v == "src2tgt") return Direction::kSrc2Tgt;
  if (v == "tgt2tgt") return Direction::kTgt2Tgt;
  throw ConfigError("--direction must be src2tgt or tgt2tgt, got '" + v + "'");
}

std::size_t parse_count(const std::string& v, const char* name) {
  std::size_t pos = 0;
  unsigned long long value = 0;
  try {
    value = std::stoull(v, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (v.empty() || pos != v.size() || v.front() == '-') {
    throw ConfigError(std::string(name) + " expects a non-negative integer, got '" + v + "'");
  }
  return static_cast<std::size_t>(value);
}

NgramCap parse_ngram_cap(const std::string& v) {
  if (v == "unbounded") return std::nullopt;
  auto n = parse_count(v, "--max-ngram");
  if (n == 0) throw ConfigError("--max-ngram must be at least 1 (or 'unbounded')");
  return n;
}

bool parse_bool(const std::string& v, const char* name) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError(std::string(name) + " expects true or false, got '" + v + "'");
}

const char* solver_name(SolverKind s) {
  switch (s) {
    case SolverKind::kGreedy: return "greedy";
    case SolverKind::kBruteForce: return "brute";
    case SolverKind::kAssignment: return "assignment";
    case SolverKind::kRelaxedMwis: return "mwis";
  }
  return "?";
}

// String-valued flags shared by project and solve; resolved against the
// config file after parsing.
struct RawRunOptions {
  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option*> options;
  std::string config_path;
  CLI::Option* config_opt = nullptr;
  std::string labeled, target, align, spans, marked, translations, out;
  CLI::Option* labeled_opt = nullptr;
  CLI::Option* spans_opt = nullptr;
  CLI::Option* marked_opt = nullptr;
  CLI::Option* translations_opt = nullptr;
  CLI::Option* out_opt = nullptr;
  bool skip_bad = false;
  CLI::Option* skip_bad_opt = nullptr;
};

void add_run_options(CLI::App* app, RawRunOptions& raw) {
  auto add = [&](const std::string& key, const std::string& flag, const std::string& help) {
    raw.options[key] = app->add_option(flag, raw.values[key], help);
  };
  add("method", "--method", "heuristic | matching (default matching)");
  add("candidates", "--candidates", "ngram | ner (default ngram)");
  add("solver", "--solver", "greedy | brute | assignment | mwis (default greedy)");
  add("mode", "--mode", "atmost | all (default atmost)");
  add("threshold", "--threshold", "heuristic word-count ratio threshold (default 4/5)");
  add("max_ngram", "--max-ngram", "n-gram candidate length cap or 'unbounded' (default 8)");
  add("min_similarity", "--min-similarity", "marker label fuzzy-match floor (default 1/2)");
  add("direction", "--direction", "src2tgt | tgt2tgt (default src2tgt)");
  add("jobs", "--jobs", "worker threads, 0 = all cores (default 0)");
  raw.config_opt = app->add_option("--config", raw.config_path, "key=value defaults file");
  raw.labeled_opt = app->add_option("--labeled", raw.labeled, "labeled CoNLL corpus (src2tgt)");
  app->add_option("--target", raw.target, "target CoNLL corpus")->required();
  app->add_option("--align", raw.align, "Pharaoh alignments, one line per sentence")->required();
  raw.spans_opt = app->add_option("--spans", raw.spans, "JSON Lines candidate spans");
  raw.marked_opt = app->add_option("--marked", raw.marked, "marker-bracketed sentences (tgt2tgt)");
  raw.translations_opt =
      app->add_option("--translations", raw.translations, "entity translations (tgt2tgt)");
  raw.out_opt = app->add_option("--out", raw.out, "output path");
  raw.skip_bad_opt = app->add_flag("--skip-bad-sentences", raw.skip_bad,
                                   "emit failing sentences unlabeled instead of aborting");
}

RunManifest resolve_manifest(const RawRunOptions& raw) {
  std::map<std::string, std::string> config;
  if (raw.config_opt->count() > 0) {
    config = parse_config_text(read_file(raw.config_path, "config"));
  }
  auto pick = [&](const std::string& key) -> std::optional<std::string> {
    if (auto it = raw.options.find(key); it != raw.options.end() && it->second->count() > 0) {
      return raw.values.at(key);
    }
    if (auto it = config.find(key); it != config.end()) return it->second;
    return std::nullopt;
  };

  RunManifest m;
  auto& cfg = m.config;
  if (auto v = pick("method")) cfg.method = parse_method(*v);
  if (auto v = pick("candidates")) cfg.candidate_source = parse_candidate_source(*v);
  if (auto v = pick("solver")) cfg.solver = parse_solver(*v);
  if (auto v = pick("mode")) cfg.mode = parse_mode(*v);
  if (auto v = pick("threshold")) cfg.ratio_threshold = parse_rational(*v);
  if (auto v = pick("max_ngram")) cfg.max_ngram_len = parse_ngram_cap(*v);
  if (auto v = pick("min_similarity")) cfg.min_similarity = parse_rational(*v);
  if (auto v = pick("direction")) m.direction = parse_direction(*v);
  if (auto v = pick("jobs")) m.jobs = static_cast<int>(parse_count(*v, "--jobs"));
  if (raw.skip_bad_opt->count() > 0) {
    m.skip_bad_sentences = raw.skip_bad;
  } else if (auto it = config.find("skip_bad_sentences"); it != config.end()) {
    m.skip_bad_sentences = parse_bool(it->second, "skip_bad_sentences");
  }
  cfg.validate();

  m.target_path = raw.target;
  m.align_path = raw.align;
  if (raw.labeled_opt->count() > 0) m.labeled_path = raw.labeled;
  if (raw.spans_opt->count() > 0) m.spans_path = raw.spans;
  if (raw.marked_opt->count() > 0) m.marked_path = raw.marked;
  if (raw.translations_opt->count() > 0) m.translations_path = raw.translations;
  if (raw.out_opt->count() > 0) m.out_path = raw.out;

  if (m.direction == Direction::kSrc2Tgt) {
    if (!m.labeled_path) throw ConfigError("--labeled is required for --direction src2tgt");
  } else {
    if (!m.marked_path || !m.translations_path) {
      throw ConfigError("--marked and --translations are required for --direction tgt2tgt");
    }
    if (m.labeled_path) throw ConfigError("--labeled is not used with --direction tgt2tgt");
  }
  const bool needs_spans = cfg.method == ProjectionMethod::kCandidateMatching &&
                           cfg.candidate_source == CandidateSource::kExternalNer;
  if (needs_spans && !m.spans_path) {
    throw ConfigError("--spans is required with --candidates ner");
  }
  return m;
}

int cmd_project(const RunManifest& m, std::ostream& err) {
  if (!m.out_path) throw ConfigError("project requires --out");
  const auto inputs = load_inputs(m);
  const auto policy = m.skip_bad_sentences ? ErrorPolicy::kSkipSentence : ErrorPolicy::kFail;
  const auto result = project_corpus(inputs, m.config, policy, m.jobs);
  for (const auto& f : result.failures) {
    err << "warning: sentence " << f.sentence_id << ": " << f.message << " (emitted unlabeled)\n";
  }
  write_atomically(*m.out_path, serialize_conll(CorpusDocument{result.sentences}));
  return kSuccess;
}

int cmd_solve(const RunManifest& m, std::size_t sentence_id, std::ostream& out) {
  const auto inputs = load_inputs(m);
  if (sentence_id >= inputs.size()) {
    throw DataError("sentence " + std::to_string(sentence_id) + " not in corpus of " +
                    std::to_string(inputs.size()) + " sentences");
  }
  const auto& labeled = inputs.labeled[sentence_id];
  const auto& target = inputs.targets[sentence_id];
  const auto& alignments = inputs.alignments[sentence_id];
  std::optional<std::span<const EntitySpan>> external;
  if (inputs.external_spans) external = std::span<const EntitySpan>((*inputs.external_spans)[sentence_id]);

  out << "sentence " << sentence_id << "\n";
  if (labeled.entities.empty()) {
    out << "no source entities: empty cost matrix\n";
    return kSuccess;
  }
  const auto candidates = build_candidates(target, m.config, external);
  const auto problem = build_problem(labeled, candidates, alignments, m.config.mode);
  out << render_problem(problem);

  const auto solution = run_solver(problem, m.config.solver);
  out << solver_name(m.config.solver) << ": " << render_solution(problem, solution);
  try {
    const auto exact = solve_bruteforce(problem);
    out << "brute: " << render_solution(problem, exact);
    out << "summary: " << solver_name(m.config.solver) << " " << to_string(solution.objective)
        << ", exact " << to_string(exact.objective) << "\n";
  } catch (const GuardError& e) {
    out << "notice: brute-force oracle skipped (" << e.what() << ")\n";
    out << "summary: " << solver_name(m.config.solver) << " " << to_string(solution.objective)
        << "\n";
  }
  return kSuccess;
}

int cmd_candidates(const std::string& target_path, const std::string& source,
                   const std::string& max_ngram, const std::optional<std::string>& out_path,
                   std::ostream& out) {
  if (parse_candidate_source(source) != CandidateSource::kNgram) {
    throw ConfigError("candidates only generates n-gram spans; NER spans are external inputs");
  }
  const auto cap = parse_ngram_cap(max_ngram);
  const auto doc = with_file_context(target_path, [&] {
    return parse_conll(std::string_view(read_file(target_path, "target")));
  });
  std::string text;
  for (const auto& ls : doc.sentences) {
    const auto set = ngram_candidates(ls.sentence, cap);
    text += serialize_span_record(ls.sentence.id, set.spans);
    text += '\n';
  }
  if (out_path) {
    write_atomically(*out_path, text);
  } else {
    out << text;
  }
  return kSuccess;
}

int cmd_evaluate(const std::string& pred_path, const std::string& gold_path,
                 const std::string& format, std::ostream& out) {
  const auto pred = with_file_context(pred_path, [&] {
    return parse_conll(std::string_view(read_file(pred_path, "prediction")));
  });
  const auto gold = with_file_context(gold_path, [&] {
    return parse_conll(std::string_view(read_file(gold_path, "gold")));
  });
  const auto report = evaluate(pred, gold);
  if (format == "text" || format == "both") out << render_text(report);
  if (format == "json" || format == "both") out << to_json(report).dump() << "\n";
  return kSuccess;
}

}  // namespace

std::map<std::string, std::string> parse_config_text(const std::string& text) {
  std::map<std::string, std::string> out;
  std::istringstream in(text);
  std::size_t line_no = 0;
  for (const auto& raw_line : read_lines(in)) {
    ++line_no;
    auto line = raw_line.substr(0, raw_line.find('#'));
    auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(line_no) + ": expected key=value");
    }
    auto strip = [](std::string s) {
      s.erase(0, s.find_first_not_of(" \t"));
      s.erase(s.find_last_not_of(" \t") + 1);
      return s;
    };
    auto key = strip(line.substr(0, eq));
    std::replace(key.begin(), key.end(), '-', '_');
    auto value = strip(line.substr(eq + 1));
    if (!kConfigKeys.contains(key)) {
      throw ConfigError("config line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
    out[key] = value;
  }
  return out;
}

CorpusInputs load_inputs(const RunManifest& m) {
  CorpusInputs inputs;

  const auto target_doc = with_file_context(m.target_path, [&] {
    return parse_conll(std::string_view(read_file(m.target_path, "target")));
  });
  for (const auto& ls : target_doc.sentences) inputs.targets.push_back(ls.sentence);

  {
    std::istringstream in(read_file(m.align_path, "alignment"));
    inputs.alignments =
        with_file_context(m.align_path, [&] { return parse_alignment_file(in); });
  }

  if (m.direction == Direction::kSrc2Tgt) {
    auto doc = with_file_context(*m.labeled_path, [&] {
      return parse_conll(std::string_view(read_file(*m.labeled_path, "labeled")));
    });
    inputs.labeled = std::move(doc.sentences);
  } else {
    std::istringstream marked_in(read_file(*m.marked_path, "marked"));
    std::istringstream trans_in(read_file(*m.translations_path, "translations"));
    const auto marked_lines = read_lines(marked_in);
    const auto trans_lines = read_lines(trans_in);
    if (marked_lines.size() != trans_lines.size()) {
      throw DataError("marked file has " + std::to_string(marked_lines.size()) +
                      " lines but translations file has " + std::to_string(trans_lines.size()));
    }
    std::vector<MarkedSentence> marked;
    for (std::size_t i = 0; i < marked_lines.size(); ++i) {
      try {
        marked.push_back(
            parse_marked_sentence(marked_lines[i], parse_translations_line(trans_lines[i])));
      } catch (const FormatError& e) {
        throw FormatError(*m.marked_path + ": line " + std::to_string(i + 1) + ": " + e.what());
      }
    }
    inputs.labeled = recover_marked_corpus(marked, m.config.min_similarity);
  }

  if (m.spans_path && m.config.candidate_source == CandidateSource::kExternalNer) {
    std::istringstream in(read_file(*m.spans_path, "spans"));
    const auto records = with_file_context(*m.spans_path, [&] { return parse_span_records(in); });
    std::vector<std::vector<EntitySpan>> spans(inputs.targets.size());
    for (const auto& [id, list] : records) {
      if (id >= spans.size()) {
        throw DataError(*m.spans_path + ": sentence_id " + std::to_string(id) +
                        " beyond target corpus of " + std::to_string(spans.size()) + " sentences");
      }
      spans[id] = list;
    }
    inputs.external_spans = std::move(spans);
  }

  inputs.check_consistent();
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    if (inputs.labeled[i].sentence.size() == 0) {
      throw DataError("labeled sentence " + std::to_string(i) + " is empty");
    }
  }
  return inputs;
}

void write_atomically(const std::string& path, const std::string& contents) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write '" + tmp.string() + "'");
    out << contents;
    out.flush();
    if (!out) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw DataError("failed writing '" + tmp.string() + "'");
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw DataError("cannot move output into place at '" + path + "'");
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Annotation projection for cross-lingual NER"};
  app.require_subcommand(1);

  RawRunOptions project_raw;
  auto* project = app.add_subcommand("project", "Project source labels onto target sentences");
  add_run_options(project, project_raw);

  RawRunOptions solve_raw;
  std::size_t sentence_id = 0;
  auto* solve = app.add_subcommand("solve", "Print one sentence's matching problem and solutions");
  add_run_options(solve, solve_raw);
  solve->add_option("--sentence", sentence_id, "sentence id")->required();

  std::string cand_target, cand_source = "ngram", cand_max = std::to_string(kDefaultMaxNgram),
                           cand_out;
  auto* candidates = app.add_subcommand("candidates", "Write n-gram candidate span records");
  candidates->add_option("--target", cand_target, "target CoNLL corpus")->required();
  candidates->add_option("--candidates", cand_source, "candidate source (ngram)");
  candidates->add_option("--max-ngram", cand_max, "length cap or 'unbounded' (default 8)");
  auto* cand_out_opt = candidates->add_option("--out", cand_out, "output path (default stdout)");

  std::string pred_path, gold_path, format = "both";
  auto* evaluate_cmd = app.add_subcommand("evaluate", "Span-level precision, recall and F1");
  evaluate_cmd->add_option("--pred", pred_path, "predicted CoNLL file")->required();
  evaluate_cmd->add_option("--gold", gold_path, "gold CoNLL file")->required();
  evaluate_cmd->add_option("--format", format, "text | json | both (default both)")
      ->check(CLI::IsMember({"text", "json", "both"}));

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsage;
  }

  try {
    if (project->parsed()) return cmd_project(resolve_manifest(project_raw), err);
    if (solve->parsed()) return cmd_solve(resolve_manifest(solve_raw), sentence_id, out);
    if (candidates->parsed()) {
      std::optional<std::string> o;
      if (cand_out_opt->count() > 0) o = cand_out;
      return cmd_candidates(cand_target, cand_source, cand_max, o, out);
    }
    if (evaluate_cmd->parsed()) return cmd_evaluate(pred_path, gold_path, format, out);
  } catch (const ConfigError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const InfeasibleError& e) {
    err << "infeasible: " << e.what() << "\n";
    return kInfeasible;
  } catch (const GuardError& e) {
    err << "guard: " << e.what() << "\n";
    return kInfeasible;
  } catch (const Error& e) {
    err << "data error: " << e.what() << "\n";
    return kDataError;
  }
  return kUsage;
}

}  // namespace xlproj::cli

//
// Copyright 2026 The PerturbKit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "cli.h"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "absl/strings/ascii.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/strip.h"
#include "json.hpp"
#include "perturbkit/augment.h"
#include "perturbkit/corpus.h"
#include "perturbkit/errors.h"
#include "perturbkit/external_perturber.h"
#include "perturbkit/fairscore.h"
#include "perturbkit/heuristic_perturber.h"
#include "perturbkit/lexicon.h"
#include "perturbkit/metrics.h"
#include "perturbkit/parallel.h"
#include "perturbkit/perturber.h"
#include "perturbkit/resources.h"
#include "perturbkit/rng.h"
#include "perturbkit/scoring.h"
#include "perturbkit/string_util.h"
#include "perturbkit/tokenizer.h"

namespace perturbkit {
namespace {

using json = nlohmann::json;

constexpr std::string_view kVersion = "0.1.0";
constexpr size_t kMaxLoggedLineErrors = 20;

// Structured logs on stderr, one JSON object per line.
class Logger {
 public:
  Logger(std::ostream& err, std::string command, bool quiet)
      : err_(err), command_(std::move(command)), quiet_(quiet) {}

  void Info(std::string_view msg, json fields = json::object()) {
    if (!quiet_) Write("info", msg, std::move(fields));
  }
  void Warn(std::string_view msg, json fields = json::object()) {
    Write("warning", msg, std::move(fields));
  }
  void Error(std::string_view msg, json fields = json::object()) {
    Write("error", msg, std::move(fields));
  }

 private:
  void Write(std::string_view level, std::string_view msg, json fields) {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char ts[32];
    std::strftime(ts, sizeof(ts), "%Y-%m-%dT%H:%M:%SZ", &tm);
    json line = {{"ts", ts},
                 {"level", std::string(level)},
                 {"cmd", command_},
                 {"msg", std::string(msg)}};
    line.update(fields);
    std::lock_guard<std::mutex> lock(mu_);
    err_ << line.dump() << "\n";
    err_.flush();
  }

  std::ostream& err_;
  std::string command_;
  bool quiet_;
  std::mutex mu_;
};

// A problem with the invocation itself (exit code 1).
struct UsageError {
  std::string message;
};

absl::StatusOr<std::string> ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

absl::StatusOr<std::vector<std::string>> ReadLines(const std::string& path) {
  absl::StatusOr<std::string> content = ReadFile(path);
  if (!content.ok()) return content.status();
  std::vector<std::string> lines;
  std::istringstream in(*content);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
  }
  return lines;
}

std::string Hex64(uint64_t value) { return absl::StrFormat("%016x", value); }

absl::StatusOr<std::string> FileDigest(const std::string& path) {
  absl::StatusOr<std::string> content = ReadFile(path);
  if (!content.ok()) return content.status();
  return Hex64(StableHash64(*content));
}

std::string EnvName(std::string_view flag) {
  std::string name = absl::StrCat("PERTURBKIT_", Sv(flag));
  for (char& c : name) c = c == '-' ? '_' : absl::ascii_toupper(c);
  return name;
}

// Fills options left unset on the command line from the environment, then
// from the config file.
void ApplyLayers(CLI::App* app, const std::map<std::string, std::string>& config) {
  for (CLI::Option* opt : app->get_options()) {
    if (opt->count() > 0 || opt->get_lnames().empty()) continue;
    const std::string& name = opt->get_lnames().front();
    if (name == "help" || name == "config") continue;
    std::string value;
    std::string origin;
    if (const char* env = std::getenv(EnvName(name).c_str()); env != nullptr) {
      value = env;
      origin = EnvName(name);
    } else if (auto it = config.find(name); it != config.end()) {
      value = it->second;
      origin = absl::StrCat("config key '", name, "'");
    } else {
      continue;
    }
    try {
      opt->add_result(value);
      opt->run_callback();
    } catch (const CLI::Error& e) {
      throw UsageError{absl::StrCat("bad value '", value, "' from ", origin,
                                    ": ", e.what())};
    }
  }
}

void Require(const CLI::Option* opt) {
  if (opt->count() == 0) {
    throw UsageError{absl::StrCat("missing required option ", opt->get_name())};
  }
}

// Global options.
struct CommonFlags {
  std::string config;
  std::string data_dir;
  std::string lexicon;
  std::string names;
  bool quiet = false;
};

struct EngineFlags {
  std::string engine = "heuristic-guarded";
  std::string endpoint;
  int timeout_ms = 10000;
  int retries = 2;
  int max_in_flight = 16;
  std::string attr_format = "plain";
};

void AddEngineFlags(CLI::App* sub, EngineFlags* flags) {
  sub->add_option("--engine", flags->engine,
                  "heuristic-naive, heuristic-guarded or external")
      ->capture_default_str();
  sub->add_option("--endpoint", flags->endpoint,
                  "external engine: stdio:<command> or http://host:port[/path]");
  sub->add_option("--timeout-ms", flags->timeout_ms,
                  "external engine: per-attempt timeout")
      ->capture_default_str();
  sub->add_option("--retries", flags->retries,
                  "external engine: retries after the first attempt")
      ->capture_default_str();
  sub->add_option("--max-in-flight", flags->max_in_flight,
                  "external engine: concurrent requests")
      ->capture_default_str();
  sub->add_option("--attr-format", flags->attr_format,
                  "external engine attribute token: plain or axis-prefixed")
      ->capture_default_str();
}

absl::StatusOr<Resources> LoadFromFlags(const CommonFlags& common) {
  return LoadResources(common.data_dir.empty() ? DefaultDataDir()
                                               : common.data_dir,
                       common.lexicon, common.names);
}

// Returns the engine; usage problems throw UsageError.
absl::StatusOr<std::unique_ptr<Perturber>> MakeEngine(
    const EngineFlags& flags, const Resources& resources, uint64_t seed) {
  std::optional<EngineKind> kind = ParseEngineKind(flags.engine);
  if (!kind) throw UsageError{absl::StrCat("unknown engine '", flags.engine, "'")};
  switch (*kind) {
    case EngineKind::kHeuristicNaive:
      return std::unique_ptr<Perturber>(std::make_unique<HeuristicPerturber>(
          &resources.lexicon, &resources.names, HeuristicMode::kNaive, seed));
    case EngineKind::kHeuristicGuarded:
      return std::unique_ptr<Perturber>(std::make_unique<HeuristicPerturber>(
          &resources.lexicon, &resources.names, HeuristicMode::kGuarded, seed));
    case EngineKind::kExternal:
      break;
  }
  if (flags.endpoint.empty()) {
    throw UsageError{"--engine external needs --endpoint"};
  }
  ExternalConfig config;
  if (absl::Status s = ParseEndpoint(flags.endpoint, &config); !s.ok()) {
    throw UsageError{std::string(s.message())};
  }
  if (flags.attr_format == "plain") {
    config.attr_format = AttrFormat::kPlain;
  } else if (flags.attr_format == "axis-prefixed") {
    config.attr_format = AttrFormat::kAxisPrefixed;
  } else {
    throw UsageError{absl::StrCat("unknown attr format '", flags.attr_format,
                                  "' (plain or axis-prefixed)")};
  }
  config.timeout = std::chrono::milliseconds(flags.timeout_ms);
  config.max_retries = flags.retries;
  config.max_in_flight = flags.max_in_flight;
  auto engine = ExternalPerturber::Create(std::move(config));
  if (!engine.ok()) return engine.status();
  return std::unique_ptr<Perturber>(*std::move(engine));
}

void LogLineErrors(Logger& log, std::string_view path,
                   const std::vector<LineError>& errors) {
  for (size_t i = 0; i < errors.size() && i < kMaxLoggedLineErrors; ++i) {
    log.Warn("skipped input line", {{"file", std::string(path)},
                                    {"line", errors[i].line},
                                    {"error", errors[i].message}});
  }
  if (errors.size() > kMaxLoggedLineErrors) {
    log.Warn("more input lines skipped",
             {{"file", std::string(path)},
              {"count", errors.size() - kMaxLoggedLineErrors}});
  }
}

int Fail(Logger& log, const absl::Status& status) {
  json fields = {{"code", absl::StatusCodeToString(status.code())}};
  if (auto kind = EngineErrorKindOf(status)) {
    fields["engine_error"] = std::string(EngineErrorKindName(*kind));
  }
  if (IsRegressionTaskError(status)) fields["regression_task"] = true;
  log.Error(StdSv(status.message()), fields);
  return ExitCodeFor(status);
}

json BreakdownJson(const PerturbabilityBreakdown& b) {
  return {{"score", b.score},
          {"entity_mentions", b.entity_mentions},
          {"dictionary_hits", b.dictionary_hits},
          {"tokens", b.token_count}};
}

// --- score -----------------------------------------------------------------

struct ScoreFlags {
  std::string text;
  std::string input;
  std::string output;
  ScoreWeights weights;
  double min_score = 0;
  CLI::Option* text_opt = nullptr;
  CLI::Option* input_opt = nullptr;
  CLI::Option* min_score_opt = nullptr;
};

int RunScore(const CommonFlags& common, const ScoreFlags& flags,
             std::ostream& out, Logger& log) {
  if ((flags.text_opt->count() > 0) == (flags.input_opt->count() > 0)) {
    throw UsageError{"score needs exactly one of --text or --input"};
  }
  if (absl::Status s = flags.weights.Validate(); !s.ok()) {
    throw UsageError{std::string(s.message())};
  }
  absl::StatusOr<Resources> resources = LoadFromFlags(common);
  if (!resources.ok()) return Fail(log, resources.status());
  const bool has_min = flags.min_score_opt->count() > 0;

  auto score_text = [&](std::string_view text)
      -> absl::StatusOr<PerturbabilityBreakdown> {
    const std::vector<Token> tokens = Tokenize(text);
    return PerturbabilityDetail(tokens, resources->lexicon, resources->names,
                                resources->stopwords, flags.weights);
  };

  if (flags.text_opt->count() > 0) {
    absl::StatusOr<PerturbabilityBreakdown> b = score_text(flags.text);
    if (!b.ok()) return Fail(log, b.status());
    json result = BreakdownJson(*b);
    if (has_min) result["passes_min_score"] = b->score >= flags.min_score;
    out << result.dump() << "\n";
    return kExitOk;
  }

  absl::StatusOr<Dataset> data = ReadDataset(flags.input);
  if (!data.ok()) return Fail(log, data.status());
  LogLineErrors(log, flags.input, data->errors);
  std::vector<std::string> lines;
  size_t passing = 0;
  for (const Example& example : data->examples) {
    absl::StatusOr<std::string> joined = JoinSegments(example.segments);
    if (!joined.ok()) return Fail(log, joined.status());
    absl::StatusOr<PerturbabilityBreakdown> b = score_text(*joined);
    json row = {{"id", example.id}};
    if (b.ok()) {
      row.update(BreakdownJson(*b));
    } else {
      row.update(BreakdownJson(PerturbabilityBreakdown{}));
    }
    if (has_min) {
      const bool passes = b.ok() && b->score >= flags.min_score;
      row["passes_min_score"] = passes;
      if (passes) ++passing;
    }
    lines.push_back(row.dump());
  }
  if (flags.output.empty()) {
    for (const std::string& line : lines) out << line << "\n";
  } else if (absl::Status s = WriteLines(flags.output, lines); !s.ok()) {
    return Fail(log, s);
  }
  json summary = {{"examples", data->examples.size()},
                  {"skipped_lines", data->errors.size()}};
  if (has_min) summary["passing_min_score"] = passing;
  log.Info("scored", summary);
  return data->errors.empty() ? kExitOk : kExitData;
}

// --- perturb ---------------------------------------------------------------

struct PerturbFlags {
  std::string text;
  std::string word;
  std::string target;
  std::string source;
  uint64_t seed = 0;
  std::string format = "text";
  EngineFlags engine;
  CLI::Option* text_opt = nullptr;
  CLI::Option* word_opt = nullptr;
  CLI::Option* target_opt = nullptr;
};

int RunPerturb(const CommonFlags& common, const PerturbFlags& flags,
               std::ostream& out, Logger& log) {
  Require(flags.text_opt);
  Require(flags.word_opt);
  Require(flags.target_opt);
  absl::StatusOr<Attribute> target = ParseAxisAttribute(flags.target);
  if (!target.ok()) throw UsageError{std::string(target.status().message())};
  std::optional<Attribute> source;
  if (!flags.source.empty()) {
    absl::StatusOr<Attribute> parsed = ParseAxisAttribute(flags.source);
    if (!parsed.ok()) throw UsageError{std::string(parsed.status().message())};
    source = *parsed;
  }
  if (flags.format != "text" && flags.format != "json") {
    throw UsageError{"--format must be text or json"};
  }
  absl::StatusOr<Resources> resources = LoadFromFlags(common);
  if (!resources.ok()) return Fail(log, resources.status());
  auto engine = MakeEngine(flags.engine, *resources, flags.seed);
  if (!engine.ok()) return Fail(log, engine.status());
  absl::StatusOr<PerturbRequest> request = BuildRequest(
      resources->lexicon, flags.text, flags.word, *target, source);
  if (!request.ok()) return Fail(log, request.status());
  absl::StatusOr<PerturbResult> result = (*engine)->Perturb(*request);
  if (!result.ok()) return Fail(log, result.status());
  if (flags.format == "text") {
    out << result->text << "\n";
  } else {
    json edits = json::array();
    for (const Edit& edit : result->edits) {
      edits.push_back({{"begin", edit.span.begin},
                       {"end", edit.span.end},
                       {"original", edit.original},
                       {"replacement", edit.replacement}});
    }
    out << json{{"text", result->text},
                {"edits", edits},
                {"engine", std::string(EngineKindName(result->engine))},
                {"source", std::string(AttributeName(request->source))},
                {"target", std::string(AttributeName(request->target))}}
               .dump()
        << "\n";
  }
  return kExitOk;
}

// --- augment / fairtune ----------------------------------------------------

struct AugmentFlags {
  std::string input;
  std::string output;
  std::string manifest;
  std::string records_output;
  uint64_t seed = 0;
  std::string strategy = "uniform";
  std::string pairs;
  double min_score = 0;
  ScoreWeights weights;
  int workers = AvailableParallelism();
  size_t window = 0;
  bool concat_original = false;
  size_t progress_interval = 10000;
  EngineFlags engine;
  CLI::Option* input_opt = nullptr;
  CLI::Option* output_opt = nullptr;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* min_score_opt = nullptr;
};

void AddAugmentFlags(CLI::App* sub, AugmentFlags* flags, bool fairtune) {
  flags->input_opt =
      sub->add_option("--input", flags->input, "dataset jsonl {id, segments, label?}");
  flags->output_opt = sub->add_option(
      "--output", flags->output,
      fairtune ? "fairtuning dataset jsonl" : "augmentation records jsonl");
  flags->seed_opt =
      sub->add_option("--seed", flags->seed, "run seed (required)");
  sub->add_option("--manifest", flags->manifest,
                  "run manifest path (default <output>.manifest.json)");
  sub->add_option("--strategy", flags->strategy,
                  "uniform, balanced or balanced:gender=w,race=w,age=w")
      ->capture_default_str();
  sub->add_option("--pairs", flags->pairs,
                  "restrict to pairs, e.g. gender:woman>man,race:black>asian");
  flags->min_score_opt = sub->add_option(
      "--min-score", flags->min_score,
      "pass through examples whose perturbability is below this (no default)");
  sub->add_option("--m0", flags->weights.m0, "perturbability entity weight")
      ->capture_default_str();
  sub->add_option("--m1", flags->weights.m1, "perturbability word-list weight")
      ->capture_default_str();
  sub->add_option("--workers", flags->workers, "worker threads")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  sub->add_option("--window", flags->window,
                  "cut single-segment examples into chunks of N tokens first");
  sub->add_option("--progress-interval", flags->progress_interval,
                  "log progress every N examples")
      ->capture_default_str();
  if (fairtune) {
    sub->add_flag("--concat-original", flags->concat_original,
                  "emit the originals followed by the perturbed copies");
    sub->add_option("--records-output", flags->records_output,
                    "also write the augmentation records here");
  }
  AddEngineFlags(sub, &flags->engine);
}

int RunAugment(const CommonFlags& common, const AugmentFlags& flags,
               bool fairtune, const std::vector<std::string>& args,
               Logger& log) {
  Require(flags.input_opt);
  Require(flags.output_opt);
  Require(flags.seed_opt);
  absl::StatusOr<SamplingStrategy> strategy =
      SamplingStrategy::Parse(flags.strategy);
  if (!strategy.ok()) throw UsageError{std::string(strategy.status().message())};
  PairSelection pairs = PairSelection::All();
  if (!flags.pairs.empty()) {
    absl::StatusOr<PairSelection> parsed = PairSelection::Parse(flags.pairs);
    if (!parsed.ok()) throw UsageError{std::string(parsed.status().message())};
    pairs = *std::move(parsed);
  }
  if (absl::Status s = flags.weights.Validate(); !s.ok()) {
    throw UsageError{std::string(s.message())};
  }

  absl::StatusOr<Resources> resources = LoadFromFlags(common);
  if (!resources.ok()) return Fail(log, resources.status());
  absl::StatusOr<Dataset> data = ReadDataset(flags.input);
  if (!data.ok()) return Fail(log, data.status());
  LogLineErrors(log, flags.input, data->errors);
  std::vector<Example> examples = std::move(data->examples);
  if (flags.window > 0) {
    absl::StatusOr<std::vector<Example>> windowed =
        WindowExamples(examples, flags.window);
    if (!windowed.ok()) return Fail(log, windowed.status());
    log.Info("windowed", {{"window", flags.window},
                          {"examples_in", examples.size()},
                          {"examples_out", windowed->size()}});
    examples = *std::move(windowed);
  }

  auto engine = MakeEngine(flags.engine, *resources, flags.seed);
  if (!engine.ok()) return Fail(log, engine.status());

  AugmentOptions options;
  options.seed = flags.seed;
  options.strategy = *strategy;
  options.pairs = pairs;
  if (flags.min_score_opt->count() > 0) options.min_score = flags.min_score;
  options.weights = flags.weights;
  options.workers = flags.workers;
  options.progress_interval = flags.progress_interval;
  options.progress = [&log](size_t done, size_t total) {
    log.Info("progress", {{"done", done}, {"total", total}});
  };
  log.Info("start", {{"examples", examples.size()},
                     {"engine", std::string(EngineKindName((*engine)->kind()))},
                     {"workers", flags.workers},
                     {"seed", flags.seed}});
  const auto started = std::chrono::steady_clock::now();
  absl::StatusOr<AugmentResult> result =
      AugmentDataset(examples, *resources, **engine, options);
  if (!result.ok()) return Fail(log, result.status());
  const double seconds = std::chrono::duration<double>(
                             std::chrono::steady_clock::now() - started)
                             .count();

  absl::Status written;
  if (fairtune) {
    written = WriteExamples(
        flags.output, FairtuneExamples(result->records, flags.concat_original));
    if (written.ok() && !flags.records_output.empty()) {
      written = WriteRecords(flags.records_output, result->records);
    }
  } else {
    written = WriteRecords(flags.output, result->records);
  }
  if (!written.ok()) return Fail(log, written);

  absl::StatusOr<std::string> input_digest = FileDigest(flags.input);
  absl::StatusOr<std::string> output_digest = FileDigest(flags.output);
  json manifest = {
      {"tool", "perturbkit"},
      {"version", std::string(kVersion)},
      {"command", fairtune ? "fairtune" : "augment"},
      {"argv", args},
      {"input", flags.input},
      {"input_digest", input_digest.ok() ? *input_digest : ""},
      {"output", flags.output},
      {"output_digest", output_digest.ok() ? *output_digest : ""},
      {"digest_method", "fnv1a64+splitmix64"},
      {"seed", flags.seed},
      {"engine", std::string(EngineKindName((*engine)->kind()))},
      {"endpoint", flags.engine.endpoint},
      {"attr_format", flags.engine.attr_format},
      {"strategy", strategy->ToString()},
      {"pairs", flags.pairs.empty() ? "all" : flags.pairs},
      {"min_score", options.min_score.has_value() ? json(*options.min_score)
                                                  : json(nullptr)},
      {"m0", flags.weights.m0},
      {"m1", flags.weights.m1},
      {"window", flags.window},
      {"concat_original", flags.concat_original},
      {"workers", flags.workers},
      {"lexicon_version", resources->lexicon_version},
      {"skipped_input_lines", data->errors.size()},
      {"counts", SummaryToJson(result->summary)},
  };
  const std::string manifest_path = flags.manifest.empty()
                                        ? flags.output + ".manifest.json"
                                        : flags.manifest;
  const std::string manifest_text = manifest.dump(2);
  if (absl::Status s = WriteLines(manifest_path, {&manifest_text, 1}); !s.ok()) {
    return Fail(log, s);
  }
  json done = SummaryToJson(result->summary);
  done["seconds"] = seconds;
  done["manifest"] = manifest_path;
  log.Info("done", done);

  const AugmentSummary& summary = result->summary;
  const size_t attempted =
      summary.total - summary.no_candidates - summary.below_min_score;
  if (summary.failed > 0) {
    log.Warn("perturbation failures", {{"failed", summary.failed},
                                       {"attempted", attempted}});
  }
  if (attempted > 0 && summary.failed == attempted) return kExitEngine;
  return data->errors.empty() ? kExitOk : kExitData;
}

// --- fairscore -------------------------------------------------------------

struct FairscoreFlags {
  std::string orig;
  std::string pert;
  std::string records;
  std::string format = "table";
  std::string output;
  CLI::Option* orig_opt = nullptr;
  CLI::Option* pert_opt = nullptr;
  CLI::Option* records_opt = nullptr;
};

int RunFairscore(const FairscoreFlags& flags, std::ostream& out, Logger& log) {
  Require(flags.orig_opt);
  Require(flags.pert_opt);
  Require(flags.records_opt);
  if (flags.format != "table" && flags.format != "json") {
    throw UsageError{"--format must be table or json"};
  }
  absl::StatusOr<Predictions> orig = ReadPredictions(flags.orig);
  if (!orig.ok()) return Fail(log, orig.status());
  absl::StatusOr<Predictions> pert = ReadPredictions(flags.pert);
  if (!pert.ok()) return Fail(log, pert.status());
  absl::StatusOr<RecordFile> records = ReadRecords(flags.records);
  if (!records.ok()) return Fail(log, records.status());
  LogLineErrors(log, flags.orig, orig->errors);
  LogLineErrors(log, flags.pert, pert->errors);
  LogLineErrors(log, flags.records, records->errors);

  absl::StatusOr<FairscoreReport> report = ComputeFairscoreForRecords(
      orig->by_id, pert->by_id, records->records);
  if (!report.ok()) return Fail(log, report.status());
  const std::string rendered = flags.format == "json"
                                   ? ReportToJson(*report).dump(2) + "\n"
                                   : ReportToTable(*report);
  if (flags.output.empty()) {
    out << rendered;
  } else {
    std::string body = rendered;
    if (!body.empty() && body.back() == '\n') body.pop_back();
    if (absl::Status s = WriteLines(flags.output, {&body, 1}); !s.ok()) {
      return Fail(log, s);
    }
  }
  const bool clean = orig->errors.empty() && pert->errors.empty() &&
                     records->errors.empty();
  return clean ? kExitOk : kExitData;
}

// --- compare ---------------------------------------------------------------

struct CompareFlags {
  std::string hyp;
  std::vector<std::string> refs;
  std::string per_example;
  std::string format = "table";
  CLI::Option* hyp_opt = nullptr;
  CLI::Option* ref_opt = nullptr;
};

int RunCompare(const CompareFlags& flags, std::ostream& out, Logger& log) {
  Require(flags.hyp_opt);
  Require(flags.ref_opt);
  if (flags.format != "table" && flags.format != "json") {
    throw UsageError{"--format must be table or json"};
  }
  absl::StatusOr<std::vector<std::string>> hyps = ReadLines(flags.hyp);
  if (!hyps.ok()) return Fail(log, hyps.status());
  std::vector<std::vector<std::string>> refs(hyps->size());
  for (const std::string& path : flags.refs) {
    absl::StatusOr<std::vector<std::string>> lines = ReadLines(path);
    if (!lines.ok()) return Fail(log, lines.status());
    if (lines->size() != hyps->size()) {
      return Fail(log, absl::InvalidArgumentError(absl::StrCat(
                           path, " has ", lines->size(), " lines but ",
                           flags.hyp, " has ", hyps->size())));
    }
    for (size_t i = 0; i < lines->size(); ++i) refs[i].push_back((*lines)[i]);
  }
  absl::StatusOr<CompareSummary> summary = CompareTexts(*hyps, refs);
  if (!summary.ok()) return Fail(log, summary.status());

  if (!flags.per_example.empty()) {
    std::vector<std::string> lines;
    for (size_t i = 0; i < summary->per_example.size(); ++i) {
      const ExampleScores& s = summary->per_example[i];
      lines.push_back(json{{"line", i + 1},
                           {"bleu", s.bleu},
                           {"rouge1", s.rouge1},
                           {"rouge2", s.rouge2},
                           {"rougeL", s.rouge_l},
                           {"rougeLsum", s.rouge_lsum},
                           {"levenshtein", s.levenshtein}}
                          .dump());
    }
    if (absl::Status s = WriteLines(flags.per_example, lines); !s.ok()) {
      return Fail(log, s);
    }
  }
  if (flags.format == "json") {
    out << json{{"examples", summary->examples},
                {"corpus_bleu", summary->corpus_bleu},
                {"mean_sentence_bleu", summary->mean_sentence_bleu},
                {"rouge1", summary->rouge1},
                {"rouge2", summary->rouge2},
                {"rougeL", summary->rouge_l},
                {"rougeLsum", summary->rouge_lsum},
                {"mean_levenshtein", summary->mean_levenshtein},
                {"bleu_config", BleuConfigDescription()}}
               .dump(2)
        << "\n";
  } else {
    out << "# " << BleuConfigDescription() << "\n";
    out << absl::StrFormat("%-20s %10d\n", "examples", summary->examples);
    out << absl::StrFormat("%-20s %10.2f\n", "corpus_bleu", summary->corpus_bleu);
    out << absl::StrFormat("%-20s %10.2f\n", "mean_sentence_bleu",
                           summary->mean_sentence_bleu);
    out << absl::StrFormat("%-20s %10.4f\n", "rouge1", summary->rouge1);
    out << absl::StrFormat("%-20s %10.4f\n", "rouge2", summary->rouge2);
    out << absl::StrFormat("%-20s %10.4f\n", "rougeL", summary->rouge_l);
    out << absl::StrFormat("%-20s %10.4f\n", "rougeLsum", summary->rouge_lsum);
    out << absl::StrFormat("%-20s %10.3f\n", "mean_levenshtein",
                           summary->mean_levenshtein);
  }
  return kExitOk;
}

// --- lexicon ---------------------------------------------------------------

struct LexiconFlags {
  std::string output;
  std::string word;
  CLI::App* validate = nullptr;
  CLI::App* stats = nullptr;
  CLI::App* dump = nullptr;
  CLI::App* lookup = nullptr;
  CLI::Option* word_opt = nullptr;
};

json EntryJson(const LexiconEntry& entry) {
  json row = {{"surface", entry.surface},
              {"axis", std::string(AxisName(entry.axis))},
              {"attribute", std::string(AttributeName(entry.attribute))},
              {"category", std::string(CategoryName(entry.category))}};
  if (entry.pronoun_case) {
    row["case"] = std::string(PronounCaseName(*entry.pronoun_case));
  }
  json swaps = json::object();
  for (const auto& [attr, word] : entry.swaps) {
    swaps[std::string(AttributeName(attr))] = word;
  }
  if (!swaps.empty()) row["swaps"] = swaps;
  if (entry.guarded) row["guarded"] = true;
  return row;
}

int RunLexicon(const CommonFlags& common, const LexiconFlags& flags,
               std::ostream& out, Logger& log) {
  absl::StatusOr<Resources> resources = LoadFromFlags(common);
  if (!resources.ok()) return Fail(log, resources.status());
  const Lexicon& lexicon = resources->lexicon;

  if (flags.validate->parsed()) {
    out << "ok: " << lexicon.size() << " lexicon entries, "
        << resources->names.size() << " name buckets, " << resources->stopwords.size()
        << " stopwords (" << resources->lexicon_version << ")\n";
    return kExitOk;
  }
  if (flags.stats->parsed()) {
    json by_axis = json::object();
    for (Axis axis : kAllAxes) {
      by_axis[std::string(AxisName(axis))] = lexicon.CountForAxis(axis);
    }
    std::map<std::string, size_t> by_category;
    size_t guarded = 0;
    for (const LexiconEntry& entry : lexicon.entries()) {
      ++by_category[std::string(CategoryName(entry.category))];
      if (entry.guarded) ++guarded;
    }
    out << json{{"version", resources->lexicon_version},
                {"entries", lexicon.size()},
                {"by_axis", by_axis},
                {"by_category", by_category},
                {"guarded", guarded},
                {"names", resources->names.size()},
                {"stopwords", resources->stopwords.size()}}
               .dump(2)
        << "\n";
    return kExitOk;
  }
  if (flags.dump->parsed()) {
    const std::string text = lexicon.Serialize();
    if (flags.output.empty()) {
      out << text;
      return kExitOk;
    }
    std::ofstream file(flags.output + ".tmp", std::ios::binary);
    file << text;
    file.close();
    if (!file || std::rename((flags.output + ".tmp").c_str(),
                             flags.output.c_str()) != 0) {
      return Fail(log, absl::DataLossError(
                           absl::StrCat("cannot write ", flags.output)));
    }
    return kExitOk;
  }
  // lookup
  Require(flags.word_opt);
  const std::vector<std::string> pattern = LowerTokenTexts(flags.word);
  if (pattern.empty()) throw UsageError{"--word is empty"};
  size_t found = 0;
  for (size_t index : lexicon.EntriesStartingWith(pattern.front())) {
    const LexiconEntry& entry = lexicon.entry(index);
    if (entry.pattern != pattern) continue;
    out << EntryJson(entry).dump() << "\n";
    ++found;
  }
  for (const auto& [axis, attribute] : resources->names.BucketsOf(flags.word)) {
    out << json{{"surface", flags.word},
                {"axis", std::string(AxisName(axis))},
                {"attribute", std::string(AttributeName(attribute))},
                {"category", "name_table"}}
               .dump()
        << "\n";
    ++found;
  }
  if (found == 0) {
    return Fail(log, absl::NotFoundError(
                         absl::StrCat("'", flags.word, "' is not in the lexicon")));
  }
  return kExitOk;
}

}  // namespace

absl::StatusOr<std::map<std::string, std::string>> ParseConfig(
    std::string_view content) {
  std::map<std::string, std::string> config;
  std::istringstream in{std::string(content)};
  std::string raw;
  for (size_t number = 1; std::getline(in, raw); ++number) {
    absl::string_view line = absl::StripAsciiWhitespace(raw);
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;
    if (line.front() == '[' && line.back() == ']') continue;
    size_t at = line.find('=');
    if (at == absl::string_view::npos) at = line.find(':');
    if (at == absl::string_view::npos) {
      return absl::InvalidArgumentError(
          absl::StrCat("config line ", number, ": expected key = value"));
    }
    std::string key(absl::StripAsciiWhitespace(line.substr(0, at)));
    absl::string_view value = absl::StripAsciiWhitespace(line.substr(at + 1));
    if (value.size() >= 2 && (value.front() == '"' || value.front() == '\'') &&
        value.back() == value.front()) {
      value = value.substr(1, value.size() - 2);
    }
    absl::AsciiStrToLower(&key);
    std::replace(key.begin(), key.end(), '_', '-');
    if (key.empty()) {
      return absl::InvalidArgumentError(
          absl::StrCat("config line ", number, ": empty key"));
    }
    config[key] = std::string(value);
  }
  return config;
}

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Demographic perturbation toolkit for text datasets.",
               "perturbkit"};
  app.fallthrough();
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  CommonFlags common;
  app.add_option("--config", common.config,
                 "key = value config file (also PERTURBKIT_CONFIG)");
  app.add_option("--data-dir", common.data_dir,
                 "directory with lexicon.jsonl, names.jsonl, stopwords.txt");
  app.add_option("--lexicon", common.lexicon, "lexicon file override");
  app.add_option("--names", common.names, "name table override");
  app.add_flag("--quiet", common.quiet, "only log warnings and errors");

  CLI::App* score = app.add_subcommand(
      "score", "Perturbability of a text or of every example in a dataset");
  ScoreFlags score_flags;
  score_flags.text_opt = score->add_option("--text", score_flags.text, "text to score");
  score_flags.input_opt =
      score->add_option("--input", score_flags.input, "dataset jsonl");
  score->add_option("--output", score_flags.output,
                    "score jsonl (default: standard output)");
  score->add_option("--m0", score_flags.weights.m0, "entity weight")
      ->capture_default_str();
  score->add_option("--m1", score_flags.weights.m1, "word-list weight")
      ->capture_default_str();
  score_flags.min_score_opt = score->add_option(
      "--min-score", score_flags.min_score,
      "also report whether each score reaches this threshold (no default)");

  CLI::App* perturb = app.add_subcommand(
      "perturb", "Rewrite one text for a selected word and target attribute");
  PerturbFlags perturb_flags;
  perturb_flags.text_opt =
      perturb->add_option("--text", perturb_flags.text, "input text");
  perturb_flags.word_opt = perturb->add_option(
      "--word", perturb_flags.word, "selected perturbable word in the text");
  perturb_flags.target_opt = perturb->add_option(
      "--target", perturb_flags.target, "target attribute, e.g. gender:man");
  perturb->add_option("--source", perturb_flags.source,
                      "source attribute when the word is ambiguous");
  perturb->add_option("--seed", perturb_flags.seed, "name replacement seed")
      ->capture_default_str();
  perturb->add_option("--format", perturb_flags.format, "text or json")
      ->capture_default_str();
  AddEngineFlags(perturb, &perturb_flags.engine);

  CLI::App* augment = app.add_subcommand(
      "augment", "Perturb one sampled word per example; write records");
  AugmentFlags augment_flags;
  AddAugmentFlags(augment, &augment_flags, /*fairtune=*/false);

  CLI::App* fairtune = app.add_subcommand(
      "fairtune", "Build a label-preserving perturbed training set");
  AugmentFlags fairtune_flags;
  AddAugmentFlags(fairtune, &fairtune_flags, /*fairtune=*/true);

  CLI::App* fairscore = app.add_subcommand(
      "fairscore", "Share of predictions that change under perturbation");
  FairscoreFlags fairscore_flags;
  fairscore_flags.orig_opt = fairscore->add_option(
      "--orig", fairscore_flags.orig, "predictions on the original inputs");
  fairscore_flags.pert_opt = fairscore->add_option(
      "--pert", fairscore_flags.pert, "predictions on the perturbed inputs");
  fairscore_flags.records_opt = fairscore->add_option(
      "--records", fairscore_flags.records, "augment records of the eval set");
  fairscore->add_option("--format", fairscore_flags.format, "table or json")
      ->capture_default_str();
  fairscore->add_option("--output", fairscore_flags.output,
                        "report path (default: standard output)");

  CLI::App* compare = app.add_subcommand(
      "compare", "BLEU, ROUGE and word edit distance against references");
  CompareFlags compare_flags;
  compare_flags.hyp_opt = compare->add_option(
      "--hyp", compare_flags.hyp, "hypotheses, one per line");
  compare_flags.ref_opt = compare->add_option(
      "--ref", compare_flags.refs, "references, one per line (repeatable)");
  compare->add_option("--per-example", compare_flags.per_example,
                      "write per-line scores as jsonl");
  compare->add_option("--format", compare_flags.format, "table or json")
      ->capture_default_str();

  CLI::App* lexicon = app.add_subcommand("lexicon", "Inspect the word lists");
  lexicon->require_subcommand(1);
  LexiconFlags lexicon_flags;
  lexicon_flags.validate =
      lexicon->add_subcommand("validate", "Load and check all resources");
  lexicon_flags.stats = lexicon->add_subcommand("stats", "Entry counts");
  lexicon_flags.dump =
      lexicon->add_subcommand("dump", "Write the canonical lexicon serialization");
  lexicon_flags.dump->add_option("--output", lexicon_flags.output,
                                 "destination (default: standard output)");
  lexicon_flags.lookup =
      lexicon->add_subcommand("lookup", "Show entries for a word");
  lexicon_flags.word_opt =
      lexicon_flags.lookup->add_option("--word", lexicon_flags.word, "word");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  std::string command;
  for (CLI::App* sub : app.get_subcommands()) command = sub->get_name();
  Logger log(err, command, common.quiet);

  try {
    std::string config_path = common.config;
    if (config_path.empty()) {
      if (const char* env = std::getenv("PERTURBKIT_CONFIG")) config_path = env;
    }
    std::map<std::string, std::string> config;
    if (!config_path.empty()) {
      absl::StatusOr<std::string> content = ReadFile(config_path);
      if (!content.ok()) throw UsageError{std::string(content.status().message())};
      absl::StatusOr<std::map<std::string, std::string>> parsed =
          ParseConfig(*content);
      if (!parsed.ok()) throw UsageError{std::string(parsed.status().message())};
      config = *std::move(parsed);
    }
    ApplyLayers(&app, config);
    for (CLI::App* sub : app.get_subcommands()) {
      ApplyLayers(sub, config);
      for (CLI::App* nested : sub->get_subcommands()) ApplyLayers(nested, config);
    }

    if (score->parsed()) return RunScore(common, score_flags, out, log);
    if (perturb->parsed()) return RunPerturb(common, perturb_flags, out, log);
    if (augment->parsed()) {
      return RunAugment(common, augment_flags, /*fairtune=*/false, args, log);
    }
    if (fairtune->parsed()) {
      return RunAugment(common, fairtune_flags, /*fairtune=*/true, args, log);
    }
    if (fairscore->parsed()) return RunFairscore(fairscore_flags, out, log);
    if (compare->parsed()) return RunCompare(compare_flags, out, log);
    if (lexicon->parsed()) return RunLexicon(common, lexicon_flags, out, log);
  } catch (const UsageError& e) {
    err << "error: " << e.message << "\n"
        << "Run with --help for usage.\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace perturbkit

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

#include "perturbkit/augment.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <set>
#include <tuple>
#include <unordered_set>
#include <utility>

#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "absl/strings/strip.h"
#include "perturbkit/errors.h"
#include "perturbkit/parallel.h"
#include "perturbkit/rng.h"
#include "perturbkit/string_util.h"
#include "perturbkit/tokenizer.h"

namespace perturbkit {
namespace {

using json = nlohmann::json;

std::string FormatError(const absl::Status& status) {
  if (auto kind = EngineErrorKindOf(status); kind.has_value()) {
    return absl::StrCat(Sv(EngineErrorKindName(*kind)), ": ",
                        status.message());
  }
  return absl::StrCat(absl::StatusCodeToString(status.code()), ": ",
                      status.message());
}

template <typename T>
json OptionalName(const std::optional<T>& value,
                  std::string_view (*name)(T)) {
  if (!value.has_value()) return nullptr;
  return std::string(name(*value));
}

}  // namespace

std::vector<CandidateItem> BuildCandidateSet(std::string_view text,
                                             std::span<const Token> tokens,
                                             const Lexicon& lexicon,
                                             const PairSelection& pairs) {
  std::vector<CandidateItem> items;
  std::set<std::tuple<std::string, Axis, Attribute>> seen;
  for (CandidateWord& word : FindCandidates(text, tokens, lexicon)) {
    const AttributePairSet* set = pairs.For(word.axis);
    if (set == nullptr) continue;
    if (!seen.emplace(AsciiLower(word.surface), word.axis, word.attribute)
             .second) {
      continue;
    }
    for (Attribute target : AttributesOf(word.axis)) {
      if (target != word.attribute && set->Contains(word.attribute, target)) {
        items.push_back({word, target});
      }
    }
  }
  return items;
}

absl::StatusOr<SamplingStrategy> SamplingStrategy::Parse(
    std::string_view spec) {
  SamplingStrategy strategy;
  if (spec == "uniform") return strategy;
  strategy.kind = Kind::kBalanced;
  if (spec == "balanced") return strategy;
  absl::string_view weights = Sv(spec);
  if (!absl::ConsumePrefix(&weights, "balanced:") &&
      !absl::ConsumePrefix(&weights, "balanced=")) {
    return absl::InvalidArgumentError(absl::StrCat(
        "unknown sampling strategy '", Sv(spec),
        "' (expected uniform, balanced or balanced:axis=w,...)"));
  }
  for (absl::string_view item : absl::StrSplit(weights, ',')) {
    std::pair<absl::string_view, absl::string_view> kv =
        absl::StrSplit(item, absl::MaxSplits('=', 1));
    std::optional<Axis> axis =
        ParseAxis(StdSv(absl::StripAsciiWhitespace(kv.first)));
    double weight = 0;
    if (!axis.has_value() ||
        !absl::SimpleAtod(absl::StripAsciiWhitespace(kv.second), &weight) ||
        !std::isfinite(weight) || weight < 0) {
      return absl::InvalidArgumentError(
          absl::StrCat("bad axis weight '", item, "'"));
    }
    strategy.axis_weights[static_cast<size_t>(*axis)] = weight;
  }
  return strategy;
}

std::string SamplingStrategy::ToString() const {
  if (kind == Kind::kUniform) return "uniform";
  std::string out = "balanced:";
  for (Axis axis : kAllAxes) {
    if (axis != kAllAxes.front()) out.push_back(',');
    absl::StrAppend(&out, Sv(AxisName(axis)), "=",
                    axis_weights[static_cast<size_t>(axis)]);
  }
  return out;
}

std::optional<CandidateItem> SampleCandidate(
    std::span<const CandidateItem> items, std::mt19937_64& rng,
    const SamplingStrategy& strategy) {
  if (items.empty()) return std::nullopt;
  if (strategy.kind == SamplingStrategy::Kind::kUniform) {
    return items[UniformIndex(rng, items.size())];
  }
  std::array<size_t, 3> counts = {0, 0, 0};
  for (const CandidateItem& item : items) {
    ++counts[static_cast<size_t>(item.word.axis)];
  }
  double total = 0;
  for (size_t a = 0; a < counts.size(); ++a) {
    if (counts[a] > 0) total += strategy.axis_weights[a];
  }
  if (!(total > 0)) return std::nullopt;
  const double u = UniformUnit(rng) * total;
  double acc = 0;
  size_t chosen = counts.size();
  for (size_t a = 0; a < counts.size(); ++a) {
    if (counts[a] == 0 || strategy.axis_weights[a] <= 0) continue;
    chosen = a;
    acc += strategy.axis_weights[a];
    if (u < acc) break;
  }
  uint64_t k = UniformIndex(rng, counts[chosen]);
  for (const CandidateItem& item : items) {
    if (static_cast<size_t>(item.word.axis) != chosen) continue;
    if (k-- == 0) return item;
  }
  return std::nullopt;  // unreachable
}

std::string_view RecordStatusName(RecordStatus status) {
  switch (status) {
    case RecordStatus::kOk:
      return "ok";
    case RecordStatus::kNoCandidates:
      return "no_candidates";
    case RecordStatus::kBelowMinScore:
      return "below_min_score";
    case RecordStatus::kFailed:
      return "failed";
  }
  return "ok";
}

std::optional<RecordStatus> ParseRecordStatus(std::string_view name) {
  for (RecordStatus status :
       {RecordStatus::kOk, RecordStatus::kNoCandidates,
        RecordStatus::kBelowMinScore, RecordStatus::kFailed}) {
    if (RecordStatusName(status) == name) return status;
  }
  return std::nullopt;
}

json RecordToJson(const AugmentationRecord& record) {
  json out = {
      {"id", record.id},
      {"original_segments", record.original_segments},
      {"perturbed_segments", record.perturbed_segments},
      {"word", record.word},
      {"word_span", nullptr},
      {"axis", OptionalName(record.axis, AxisName)},
      {"source", OptionalName(record.source, AttributeName)},
      {"target", OptionalName(record.target, AttributeName)},
      {"engine", std::string(EngineKindName(record.engine))},
      {"seed", record.seed},
      {"changed", record.changed},
      {"status", std::string(RecordStatusName(record.status))},
      {"error", record.error.empty() ? json(nullptr) : json(record.error)},
      {"candidates", record.candidate_count},
  };
  if (!record.label.is_null()) out["label"] = record.label;
  if (record.word_span.has_value()) {
    out["word_span"] = {record.word_span->begin, record.word_span->end};
  }
  return out;
}

absl::StatusOr<AugmentationRecord> RecordFromJson(const json& in) {
  if (!in.is_object()) return absl::InvalidArgumentError("record is not an object");
  AugmentationRecord record;
  auto string_list = [&](const char* key,
                         std::vector<std::string>* out) -> absl::Status {
    auto it = in.find(key);
    if (it == in.end() || !it->is_array()) {
      return absl::InvalidArgumentError(absl::StrCat("missing ", key));
    }
    for (const json& item : *it) {
      if (!item.is_string()) {
        return absl::InvalidArgumentError(absl::StrCat(key, " must be strings"));
      }
      out->push_back(item.get<std::string>());
    }
    return absl::OkStatus();
  };

  auto id = in.find("id");
  if (id == in.end()) return absl::InvalidArgumentError("missing id");
  if (id->is_string()) {
    record.id = id->get<std::string>();
  } else if (id->is_number_integer()) {
    record.id = id->dump();
  } else {
    return absl::InvalidArgumentError("id must be a string or an integer");
  }
  if (absl::Status s = string_list("original_segments", &record.original_segments);
      !s.ok()) {
    return s;
  }
  if (absl::Status s =
          string_list("perturbed_segments", &record.perturbed_segments);
      !s.ok()) {
    return s;
  }
  if (auto it = in.find("label"); it != in.end()) record.label = *it;
  if (auto it = in.find("word"); it != in.end() && it->is_string()) {
    record.word = it->get<std::string>();
  }
  if (auto it = in.find("word_span");
      it != in.end() && it->is_array() && it->size() == 2) {
    record.word_span = Span{(*it)[0].get<size_t>(), (*it)[1].get<size_t>()};
  }
  if (auto it = in.find("axis"); it != in.end() && it->is_string()) {
    record.axis = ParseAxis(it->get<std::string>());
    if (!record.axis) return absl::InvalidArgumentError("unknown axis");
  }
  for (auto [key, field] : {std::pair{"source", &record.source},
                            std::pair{"target", &record.target}}) {
    if (auto it = in.find(key); it != in.end() && it->is_string()) {
      *field = ParseAttribute(it->get<std::string>());
      if (!field->has_value()) {
        return absl::InvalidArgumentError(absl::StrCat("unknown ", key));
      }
    }
  }
  if (auto it = in.find("engine"); it != in.end() && it->is_string()) {
    std::optional<EngineKind> engine = ParseEngineKind(it->get<std::string>());
    if (!engine) return absl::InvalidArgumentError("unknown engine");
    record.engine = *engine;
  }
  if (auto it = in.find("seed"); it != in.end() && it->is_number_unsigned()) {
    record.seed = it->get<uint64_t>();
  }
  auto changed = in.find("changed");
  if (changed == in.end() || !changed->is_boolean()) {
    return absl::InvalidArgumentError("missing changed");
  }
  record.changed = changed->get<bool>();
  if (auto it = in.find("status"); it != in.end()) {
    std::optional<RecordStatus> status =
        it->is_string() ? ParseRecordStatus(it->get<std::string>())
                        : std::nullopt;
    if (!status) return absl::InvalidArgumentError("unknown status");
    record.status = *status;
  }
  if (auto it = in.find("error"); it != in.end() && it->is_string()) {
    record.error = it->get<std::string>();
  }
  if (auto it = in.find("candidates"); it != in.end() && it->is_number_unsigned()) {
    record.candidate_count = it->get<size_t>();
  }
  return record;
}

absl::StatusOr<RecordFile> ReadRecords(const std::string& path) {
  std::ifstream in(path);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  RecordFile file;
  std::unordered_set<std::string> ids;
  std::string line;
  for (size_t number = 1; std::getline(in, line); ++number) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json parsed = json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (parsed.is_discarded()) {
      file.errors.push_back({number, "invalid JSON"});
      continue;
    }
    absl::StatusOr<AugmentationRecord> record;
    try {
      record = RecordFromJson(parsed);
    } catch (const json::exception& e) {
      record = absl::InvalidArgumentError(e.what());
    }
    if (!record.ok()) {
      file.errors.push_back({number, std::string(record.status().message())});
      continue;
    }
    if (!ids.insert(record->id).second) {
      file.errors.push_back({number, absl::StrCat("duplicate id '", record->id, "'")});
      continue;
    }
    file.records.push_back(*std::move(record));
  }
  return file;
}

absl::Status WriteRecords(const std::string& path,
                          std::span<const AugmentationRecord> records) {
  auto writer = AtomicWriter::Open(path);
  if (!writer.ok()) return writer.status();
  for (const AugmentationRecord& record : records) {
    if (absl::Status s = (*writer)->WriteLine(RecordToJson(record).dump());
        !s.ok()) {
      return s;
    }
  }
  return (*writer)->Commit();
}

json SummaryToJson(const AugmentSummary& summary) {
  return {{"total", summary.total},
          {"changed", summary.changed},
          {"unchanged", summary.unchanged},
          {"failed", summary.failed},
          {"no_candidates", summary.no_candidates},
          {"below_min_score", summary.below_min_score}};
}

namespace {

AugmentationRecord AugmentOne(const Example& example, size_t ordinal,
                              const Resources& resources,
                              const Perturber& perturber,
                              const AugmentOptions& options) {
  AugmentationRecord record;
  record.id = example.id;
  record.original_segments = example.segments;
  record.perturbed_segments = example.segments;
  record.label = example.label;
  record.engine = perturber.kind();
  record.seed = options.seed;

  absl::StatusOr<std::string> joined = JoinSegments(example.segments);
  if (!joined.ok()) {
    record.status = RecordStatus::kFailed;
    record.error = FormatError(joined.status());
    return record;
  }
  const std::vector<Token> tokens = Tokenize(*joined);

  if (options.min_score.has_value()) {
    absl::StatusOr<double> score =
        tokens.empty() ? absl::StatusOr<double>(0.0)
                       : Perturbability(tokens, resources.lexicon,
                                        resources.names, resources.stopwords,
                                        options.weights);
    if (!score.ok() || *score < *options.min_score) {
      record.status = RecordStatus::kBelowMinScore;
      return record;
    }
  }

  const std::vector<CandidateItem> items =
      BuildCandidateSet(*joined, tokens, resources.lexicon, options.pairs);
  record.candidate_count = items.size();
  std::mt19937_64 rng(StreamSeed(options.seed, ordinal));
  std::optional<CandidateItem> pick =
      SampleCandidate(items, rng, options.strategy);
  if (!pick.has_value()) {
    record.status = RecordStatus::kNoCandidates;
    return record;
  }

  record.word = pick->word.surface;
  record.word_span = pick->word.span;
  record.axis = pick->word.axis;
  record.source = pick->word.attribute;
  record.target = pick->target;

  PerturbRequest request;
  request.text = *joined;
  request.word = {pick->word.surface, pick->word.span};
  request.axis = pick->word.axis;
  request.source = pick->word.attribute;
  request.target = pick->target;
  absl::StatusOr<PerturbResult> result = perturber.Perturb(request);
  if (!result.ok()) {
    record.status = RecordStatus::kFailed;
    record.error = FormatError(result.status());
    return record;
  }
  absl::StatusOr<std::vector<std::string>> segments =
      SplitSegments(result->text, example.segments.size());
  if (!segments.ok()) {
    record.status = RecordStatus::kFailed;
    record.error = FormatError(segments.status());
    return record;
  }
  record.perturbed_segments = *std::move(segments);
  record.changed = record.perturbed_segments != record.original_segments;
  return record;
}

}  // namespace

absl::StatusOr<AugmentResult> AugmentDataset(std::span<const Example> examples,
                                             const Resources& resources,
                                             const Perturber& perturber,
                                             const AugmentOptions& options) {
  if (options.workers < 1) {
    return absl::InvalidArgumentError("workers must be at least 1");
  }
  if (absl::Status s = options.weights.Validate(); !s.ok()) return s;
  if (options.min_score.has_value() && !std::isfinite(*options.min_score)) {
    return absl::InvalidArgumentError("min score must be finite");
  }

  AugmentResult result;
  result.records.resize(examples.size());
  std::atomic<size_t> done{0};
  const size_t interval = std::max<size_t>(options.progress_interval, 1);
  ParallelFor(examples.size(),
              std::max(options.workers, perturber.PreferredConcurrency()),
              [&](size_t i) {
                result.records[i] = AugmentOne(examples[i], i, resources,
                                               perturber, options);
                const size_t d = done.fetch_add(1) + 1;
                if (options.progress &&
                    (d % interval == 0 || d == examples.size())) {
                  options.progress(d, examples.size());
                }
              });

  AugmentSummary& summary = result.summary;
  summary.total = result.records.size();
  for (const AugmentationRecord& record : result.records) {
    if (record.changed) {
      ++summary.changed;
    } else {
      ++summary.unchanged;
    }
    switch (record.status) {
      case RecordStatus::kFailed:
        ++summary.failed;
        break;
      case RecordStatus::kNoCandidates:
        ++summary.no_candidates;
        break;
      case RecordStatus::kBelowMinScore:
        ++summary.below_min_score;
        break;
      case RecordStatus::kOk:
        break;
    }
  }
  return result;
}

std::vector<Example> FairtuneExamples(
    std::span<const AugmentationRecord> records, bool concat_original) {
  std::vector<Example> out;
  out.reserve(records.size() * (concat_original ? 2 : 1));
  if (concat_original) {
    for (const AugmentationRecord& record : records) {
      out.push_back({record.id, record.original_segments, record.label});
    }
  }
  for (const AugmentationRecord& record : records) {
    out.push_back({concat_original
                       ? absl::StrCat(record.id, Sv(kPerturbedIdSuffix))
                       : record.id,
                   record.perturbed_segments, record.label});
  }
  return out;
}

absl::StatusOr<std::vector<Example>> WindowExamples(
    std::span<const Example> examples, size_t window) {
  if (window == 0) return absl::InvalidArgumentError("window must be positive");
  std::vector<Example> out;
  for (const Example& example : examples) {
    if (example.segments.size() != 1) {
      out.push_back(example);
      continue;
    }
    const std::string& text = example.segments.front();
    const std::vector<Token> tokens = Tokenize(text);
    if (tokens.size() <= window) {
      out.push_back(example);
      continue;
    }
    for (size_t start = 0, k = 0; start < tokens.size(); start += window, ++k) {
      const size_t end = std::min(tokens.size(), start + window);
      const size_t begin_byte = tokens[start].span.begin;
      const size_t end_byte = tokens[end - 1].span.end;
      out.push_back({absl::StrCat(example.id, "#", k),
                     {text.substr(begin_byte, end_byte - begin_byte)},
                     example.label});
    }
  }
  std::unordered_set<std::string> ids;
  for (const Example& example : out) {
    if (!ids.insert(example.id).second) {
      return absl::InvalidArgumentError(
          absl::StrCat("window id collision on '", example.id, "'"));
    }
  }
  return out;
}

}  // namespace perturbkit

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

#include "perturbkit/corpus.h"

#include <unistd.h>

#include <cstdio>
#include <sstream>

#include "absl/strings/str_cat.h"
#include "perturbkit/string_util.h"
#include "perturbkit/tokenizer.h"

namespace perturbkit {

using json = nlohmann::json;

absl::StatusOr<std::string> JoinSegments(
    std::span<const std::string> segments) {
  if (segments.empty()) {
    return absl::InvalidArgumentError("example has no segments");
  }
  std::string out;
  for (size_t i = 0; i < segments.size(); ++i) {
    if (segments[i].find(kSepToken) != std::string::npos) {
      return absl::InvalidArgumentError(absl::StrCat(
          "separator collision: segment ", i, " contains ", Sv(kSepToken)));
    }
    if (i > 0) out.append(kSegmentJoiner);
    out.append(segments[i]);
  }
  return out;
}

absl::StatusOr<std::vector<std::string>> SplitSegments(std::string_view text,
                                                       size_t expected) {
  std::vector<std::string> segments;
  size_t start = 0;
  while (true) {
    const size_t at = text.find(kSepToken, start);
    std::string_view piece = text.substr(
        start, at == std::string_view::npos ? std::string_view::npos
                                            : at - start);
    if (!segments.empty() && !piece.empty() && piece.front() == ' ') {
      piece.remove_prefix(1);
    }
    if (at != std::string_view::npos && !piece.empty() &&
        piece.back() == ' ') {
      piece.remove_suffix(1);
    }
    segments.emplace_back(piece);
    if (at == std::string_view::npos) break;
    start = at + kSepToken.size();
  }
  if (segments.size() != expected) {
    return absl::FailedPreconditionError(absl::StrCat(
        "segment count mismatch: expected ", expected, ", found ",
        segments.size()));
  }
  return segments;
}

absl::StatusOr<Example> ParseExample(std::string_view line) {
  json record = json::parse(line, nullptr, /*allow_exceptions=*/false);
  if (record.is_discarded()) return absl::InvalidArgumentError("invalid JSON");
  if (!record.is_object()) {
    return absl::InvalidArgumentError("record is not an object");
  }
  Example example;
  if (!record.contains("id")) return absl::InvalidArgumentError("missing id");
  const json& id = record["id"];
  if (id.is_string()) {
    example.id = id.get<std::string>();
  } else if (id.is_number_integer()) {
    example.id = id.dump();
  } else {
    return absl::InvalidArgumentError("id must be a string or an integer");
  }
  if (example.id.empty()) return absl::InvalidArgumentError("empty id");

  if (record.contains("segments")) {
    const json& segments = record["segments"];
    if (!segments.is_array() || segments.empty()) {
      return absl::InvalidArgumentError(
          "segments must be a non-empty array of strings");
    }
    for (const json& segment : segments) {
      if (!segment.is_string()) {
        return absl::InvalidArgumentError("segments must be strings");
      }
      example.segments.push_back(segment.get<std::string>());
    }
  } else if (record.contains("text") && record["text"].is_string()) {
    example.segments.push_back(record["text"].get<std::string>());
  } else {
    return absl::InvalidArgumentError("missing segments");
  }
  for (const std::string& segment : example.segments) {
    if (segment.find(kSepToken) != std::string::npos) {
      return absl::InvalidArgumentError(absl::StrCat(
          "separator collision: a segment contains ", Sv(kSepToken)));
    }
  }
  if (record.contains("label")) example.label = record["label"];
  return example;
}

std::string SerializeExample(const Example& example) {
  json record = {{"id", example.id}, {"segments", example.segments}};
  if (example.has_label()) record["label"] = example.label;
  return record.dump();
}

absl::StatusOr<DatasetReader> DatasetReader::Open(const std::string& path) {
  auto in = std::make_unique<std::ifstream>(path);
  if (!*in) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  return DatasetReader(std::move(in));
}

DatasetReader DatasetReader::FromString(std::string content) {
  return DatasetReader(
      std::make_unique<std::istringstream>(std::move(content)));
}

bool DatasetReader::Next(Example* example) {
  std::string line;
  while (std::getline(*in_, line)) {
    ++line_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    absl::StatusOr<Example> parsed = ParseExample(line);
    if (!parsed.ok()) {
      errors_.push_back({line_, std::string(parsed.status().message())});
      continue;
    }
    if (!seen_ids_.insert(parsed->id).second) {
      errors_.push_back({line_, absl::StrCat("duplicate id '", parsed->id, "'")});
      continue;
    }
    *example = *std::move(parsed);
    return true;
  }
  return false;
}

absl::StatusOr<Dataset> ReadDataset(const std::string& path) {
  absl::StatusOr<DatasetReader> reader = DatasetReader::Open(path);
  if (!reader.ok()) return reader.status();
  Dataset dataset;
  Example example;
  while (reader->Next(&example)) dataset.examples.push_back(std::move(example));
  dataset.errors = reader->errors();
  return dataset;
}

Dataset ParseDataset(std::string content) {
  DatasetReader reader = DatasetReader::FromString(std::move(content));
  Dataset dataset;
  Example example;
  while (reader.Next(&example)) dataset.examples.push_back(std::move(example));
  dataset.errors = reader.errors();
  return dataset;
}

absl::StatusOr<std::unique_ptr<AtomicWriter>> AtomicWriter::Open(
    const std::string& path) {
  std::unique_ptr<AtomicWriter> writer(new AtomicWriter(
      path, absl::StrCat(path, ".tmp.", static_cast<long>(getpid()))));
  writer->out_.open(writer->temp_path_, std::ios::binary | std::ios::trunc);
  if (!writer->out_) {
    return absl::PermissionDeniedError(
        absl::StrCat("cannot write ", writer->temp_path_));
  }
  return writer;
}

AtomicWriter::~AtomicWriter() {
  if (!committed_) {
    out_.close();
    std::remove(temp_path_.c_str());
  }
}

absl::Status AtomicWriter::WriteLine(std::string_view line) {
  out_.write(line.data(), static_cast<std::streamsize>(line.size()));
  out_.put('\n');
  if (!out_) {
    return absl::DataLossError(absl::StrCat("write to ", temp_path_, " failed"));
  }
  ++lines_;
  return absl::OkStatus();
}

absl::Status AtomicWriter::Commit() {
  out_.flush();
  out_.close();
  if (!out_) {
    return absl::DataLossError(absl::StrCat("closing ", temp_path_, " failed"));
  }
  if (std::rename(temp_path_.c_str(), path_.c_str()) != 0) {
    return absl::DataLossError(
        absl::StrCat("rename ", temp_path_, " -> ", path_, " failed"));
  }
  committed_ = true;
  return absl::OkStatus();
}

absl::Status WriteLines(const std::string& path,
                        std::span<const std::string> lines) {
  auto writer = AtomicWriter::Open(path);
  if (!writer.ok()) return writer.status();
  for (const std::string& line : lines) {
    if (absl::Status s = (*writer)->WriteLine(line); !s.ok()) return s;
  }
  return (*writer)->Commit();
}

absl::Status WriteExamples(const std::string& path,
                           std::span<const Example> examples) {
  std::vector<std::string> lines;
  lines.reserve(examples.size());
  for (const Example& example : examples) {
    lines.push_back(SerializeExample(example));
  }
  return WriteLines(path, lines);
}

}  // namespace perturbkit

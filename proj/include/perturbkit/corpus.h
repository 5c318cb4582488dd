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

// Dataset I/O and multi-segment handling.
//
// Dataset files hold one JSON object per line:
//
//   {"id": "ex1", "segments": ["premise", "hypothesis"], "label": "entailment"}
//
// `id` may be a string or an integer (kept as its decimal string), `label`
// is optional and may be any JSON value, and `{"text": "..."}` is accepted
// as shorthand for a single segment. Segments are joined with " <SEP> " for
// perturbation and split back afterwards.

#ifndef PERTURBKIT_CORPUS_H_
#define PERTURBKIT_CORPUS_H_

#include <cstddef>
#include <fstream>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "json.hpp"

namespace perturbkit {

inline constexpr std::string_view kSegmentJoiner = " <SEP> ";

struct Example {
  std::string id;
  std::vector<std::string> segments;
  nlohmann::json label;  // null when absent

  bool has_label() const { return !label.is_null(); }
  bool operator==(const Example&) const = default;
};

// Errors when a segment contains the separator token.
absl::StatusOr<std::string> JoinSegments(
    std::span<const std::string> segments);

// Splits on the separator token, dropping one space on each side of it.
// Errors unless exactly `expected` segments come back.
absl::StatusOr<std::vector<std::string>> SplitSegments(std::string_view text,
                                                       size_t expected);

absl::StatusOr<Example> ParseExample(std::string_view line);
std::string SerializeExample(const Example& example);

struct LineError {
  size_t line = 0;
  std::string message;
};

// Streaming reader. Malformed lines (bad JSON, missing fields, separator
// collisions, duplicate ids) are recorded and skipped.
class DatasetReader {
 public:
  static absl::StatusOr<DatasetReader> Open(const std::string& path);
  static DatasetReader FromString(std::string content);

  // False at end of input.
  bool Next(Example* example);

  const std::vector<LineError>& errors() const { return errors_; }
  size_t lines_read() const { return line_; }

 private:
  explicit DatasetReader(std::unique_ptr<std::istream> in)
      : in_(std::move(in)) {}

  std::unique_ptr<std::istream> in_;
  size_t line_ = 0;
  std::unordered_set<std::string> seen_ids_;
  std::vector<LineError> errors_;
};

struct Dataset {
  std::vector<Example> examples;
  std::vector<LineError> errors;
};

absl::StatusOr<Dataset> ReadDataset(const std::string& path);
Dataset ParseDataset(std::string content);

// Writes to "<path>.tmp.<pid>" and renames over `path` on Commit. An
// uncommitted writer removes its temporary file, so `path` is either the
// old content or the complete new content.
class AtomicWriter {
 public:
  static absl::StatusOr<std::unique_ptr<AtomicWriter>> Open(
      const std::string& path);
  ~AtomicWriter();

  AtomicWriter(const AtomicWriter&) = delete;
  AtomicWriter& operator=(const AtomicWriter&) = delete;

  // Appends `line` and a newline.
  absl::Status WriteLine(std::string_view line);
  absl::Status Commit();

  size_t lines_written() const { return lines_; }
  const std::string& temp_path() const { return temp_path_; }

 private:
  AtomicWriter(std::string path, std::string temp_path)
      : path_(std::move(path)), temp_path_(std::move(temp_path)) {}

  std::string path_;
  std::string temp_path_;
  std::ofstream out_;
  size_t lines_ = 0;
  bool committed_ = false;
};

// Atomically replaces `path` with the given lines.
absl::Status WriteLines(const std::string& path,
                        std::span<const std::string> lines);

absl::Status WriteExamples(const std::string& path,
                           std::span<const Example> examples);

}  // namespace perturbkit

#endif  // PERTURBKIT_CORPUS_H_

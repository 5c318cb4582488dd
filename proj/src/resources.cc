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

#include "perturbkit/resources.h"

#include <fstream>
#include <sstream>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "perturbkit/rng.h"
#include "perturbkit/string_util.h"

namespace perturbkit {
namespace {

absl::StatusOr<std::string> Slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string Annotate(const std::string& path, const absl::Status& status) {
  return absl::StrCat(path, ": ", status.message());
}

}  // namespace

std::string DefaultDataDir() {
#ifdef PERTURBKIT_DEFAULT_DATA_DIR
  return PERTURBKIT_DEFAULT_DATA_DIR;
#else
  return "data";
#endif
}

absl::StatusOr<Resources> LoadResources(const std::string& data_dir,
                                        const std::string& lexicon_path,
                                        const std::string& names_path) {
  const std::string lex_file =
      lexicon_path.empty() ? data_dir + "/lexicon.jsonl" : lexicon_path;
  const std::string names_file =
      names_path.empty() ? data_dir + "/names.jsonl" : names_path;
  const std::string stop_file = data_dir + "/stopwords.txt";

  absl::StatusOr<std::string> lex_content = Slurp(lex_file);
  if (!lex_content.ok()) return lex_content.status();
  absl::StatusOr<Lexicon> lexicon = Lexicon::Parse(*lex_content);
  if (!lexicon.ok()) {
    return absl::Status(lexicon.status().code(),
                        Annotate(lex_file, lexicon.status()));
  }
  absl::StatusOr<NameTable> names = NameTable::Load(names_file);
  if (!names.ok()) {
    return absl::Status(names.status().code(),
                        Annotate(names_file, names.status()));
  }
  absl::StatusOr<Stopwords> stopwords = Stopwords::Load(stop_file);
  if (!stopwords.ok()) return stopwords.status();

  Resources resources{*std::move(lexicon), *std::move(names),
                      *std::move(stopwords), ""};
  resources.lexicon_version = absl::StrFormat(
      "%s+%016x", Sv(kLexiconHeader), StableHash64(*lex_content));
  return resources;
}

}  // namespace perturbkit

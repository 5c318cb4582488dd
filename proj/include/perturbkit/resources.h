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

// The bundled data files loaded together.

#ifndef PERTURBKIT_RESOURCES_H_
#define PERTURBKIT_RESOURCES_H_

#include <string>

#include "absl/status/statusor.h"
#include "perturbkit/entities.h"
#include "perturbkit/lexicon.h"

namespace perturbkit {

struct Resources {
  Lexicon lexicon;
  NameTable names;
  Stopwords stopwords;
  // Header line plus a content hash of the lexicon file, e.g.
  // "perturbkit-lexicon v1+3f2a...". Recorded in run manifests.
  std::string lexicon_version;
};

// Directory compiled in at build time.
std::string DefaultDataDir();

// Loads lexicon.jsonl, names.jsonl and stopwords.txt from `data_dir`.
// Either path may be overridden individually.
absl::StatusOr<Resources> LoadResources(const std::string& data_dir,
                                        const std::string& lexicon_path = "",
                                        const std::string& names_path = "");

}  // namespace perturbkit

#endif  // PERTURBKIT_RESOURCES_H_

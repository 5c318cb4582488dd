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

// Portable hashing and random helpers. Everything here produces the same
// values on every platform and standard library; the std distributions do
// not, so they are avoided.

#ifndef PERTURBKIT_RNG_H_
#define PERTURBKIT_RNG_H_

#include <cstdint>
#include <random>
#include <string_view>

namespace perturbkit {

uint64_t SplitMix64(uint64_t x);

// FNV-1a over the bytes, finalized with SplitMix64.
uint64_t StableHash64(std::string_view bytes, uint64_t seed = 0);

// Seed for the random stream of the snippet at `ordinal`.
uint64_t StreamSeed(uint64_t global_seed, uint64_t ordinal);

// Uniform integer in [0, n) by rejection sampling. n must be positive.
uint64_t UniformIndex(std::mt19937_64& rng, uint64_t n);

// Uniform double in [0, 1) with 53 random bits.
double UniformUnit(std::mt19937_64& rng);

}  // namespace perturbkit

#endif  // PERTURBKIT_RNG_H_

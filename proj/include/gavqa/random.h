// Copyright 2026 The gavqa Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GAVQA_RANDOM_H_
#define GAVQA_RANDOM_H_

#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

namespace gavqa {

using Rng = std::mt19937_64;

// Stream labels used when deriving independent RNG streams from a run seed.
enum class StreamTag : std::uint64_t {
  kInitPopulation = 1,
  kEvaluate = 2,
  kBreed = 3,
  kFinalStage = 4,
  kTestRisk = 5,
  kTargets = 6,
};

// Derives a reproducible stream from a root seed and a path of integers.
// Distinct paths give statistically independent streams, so parallel
// workers never share generator state.
inline Rng derive_stream(std::uint64_t root, StreamTag tag,
                         std::initializer_list<std::uint64_t> path = {}) {
  std::vector<std::uint32_t> words;
  words.reserve(2 * (path.size() + 2));
  auto push = [&](std::uint64_t v) {
    words.push_back(static_cast<std::uint32_t>(v & 0xffffffffu));
    words.push_back(static_cast<std::uint32_t>(v >> 32));
  };
  push(root);
  push(static_cast<std::uint64_t>(tag));
  for (std::uint64_t p : path) push(p);
  std::seed_seq seq(words.begin(), words.end());
  return Rng(seq);
}

}  // namespace gavqa

#endif  // GAVQA_RANDOM_H_

// Copyright 2026 The RMBoost Authors
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

// Portable random streams.
//
// The engine is std::mt19937_64, whose output sequence is fixed by the C++
// standard. Standard distributions are not (their algorithms are left to the
// library), so uniforms, bounded integers and shuffles are derived here from
// raw engine output and give the same values on every platform.
//
// Streams are keyed rather than chained: the seed of a stream is
//
//   StreamSeed(base, {FNV-1a(dataset), repeat, FNV-1a(purpose)})
//
// folded through SplitMix64, with purpose one of "split", "uniform",
// "adversarial", ... so that adding a consumer never shifts another one.

#ifndef RMBOOST_RNG_H_
#define RMBOOST_RNG_H_

#include <cstdint>
#include <initializer_list>
#include <random>
#include <span>
#include <string_view>
#include <utility>

namespace rmboost {

inline std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t Fnv1a(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::uint64_t StreamSeed(std::uint64_t base,
                                std::initializer_list<std::uint64_t> key) {
  std::uint64_t h = SplitMix64(base);
  for (std::uint64_t part : key) h = SplitMix64(h ^ part);
  return h;
}

inline std::uint64_t StreamSeed(std::uint64_t base, std::string_view dataset,
                                std::uint64_t repeat, std::string_view purpose) {
  return StreamSeed(base, {Fnv1a(dataset), repeat, Fnv1a(purpose)});
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t Next() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double Uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, bound), bound > 0, by rejection.
  std::uint64_t Below(std::uint64_t bound) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t v;
    do {
      v = engine_();
    } while (v >= limit);
    return v % bound;
  }

  // Fisher-Yates.
  template <typename T>
  void Shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::swap(items[i - 1], items[Below(i)]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace rmboost

#endif  // RMBOOST_RNG_H_

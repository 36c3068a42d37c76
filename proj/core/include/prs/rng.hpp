// Copyright 2026 The PRS Authors.
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

#pragma once

#include <cstdint>

namespace prs {

// Counter-based randomness.
//
// Every random quantity in the library is a pure function of a 64-bit key and
// a 64-bit counter: value(key, counter) = splitmix64_mix(key + (counter + 1) *
// 0x9E3779B97F4A7C15). This is exactly the SplitMix64 sequence seeded with
// `key`, addressed randomly instead of sequentially, so per-pair draws can be
// made in any iteration order (or in parallel) and still reproduce bit for bit.
//
// Independent purposes (community membership, ranking, edge orientations,
// eigensolver start vectors) use independent keys derived with derive_key().

/// The SplitMix64 output finalizer.
constexpr std::uint64_t splitmix64_mix(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

/// Per-trial seed: mix(base_seed, index) = splitmix64_mix(base_seed ^
/// splitmix64_mix(index + gamma)). Distinct indices give decorrelated seeds.
constexpr std::uint64_t mix_seed(std::uint64_t base_seed,
                                 std::uint64_t index) noexcept {
  return splitmix64_mix(base_seed ^ splitmix64_mix(index + kGoldenGamma));
}

/// Named sub-streams of a seed.
enum class Stream : std::uint64_t {
  kCommunity = 1,
  kRanking = 2,
  kEdges = 3,
  kStartVector = 4,
  kMonteCarlo = 5,
};

constexpr std::uint64_t derive_key(std::uint64_t seed, Stream stream) noexcept {
  return mix_seed(seed, static_cast<std::uint64_t>(stream));
}

/// Random-access view of one stream.
class CounterRng {
 public:
  constexpr explicit CounterRng(std::uint64_t key) noexcept : key_(key) {}

  constexpr std::uint64_t bits(std::uint64_t counter) const noexcept {
    return splitmix64_mix(key_ + (counter + 1) * kGoldenGamma);
  }

  /// Uniform in [0, 1) with 53 random bits.
  constexpr double uniform(std::uint64_t counter) const noexcept {
    return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
  }

  constexpr std::uint64_t key() const noexcept { return key_; }

 private:
  std::uint64_t key_;
};

/// Sequential generator over one stream. Satisfies
/// std::uniform_random_bit_generator, but library code only uses the
/// members below because standard distributions are not portable.
class SequentialRng {
 public:
  using result_type = std::uint64_t;

  constexpr explicit SequentialRng(std::uint64_t key) noexcept : rng_(key) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return ~result_type{0}; }

  constexpr result_type operator()() noexcept { return rng_.bits(counter_++); }

  constexpr double uniform() noexcept { return rng_.uniform(counter_++); }

  /// Uniform integer in [0, bound). Lemire's multiply-shift with rejection.
  std::uint64_t below(std::uint64_t bound) noexcept;

  /// Standard normal via Box-Muller (one value per call).
  double normal() noexcept;

  constexpr std::uint64_t position() const noexcept { return counter_; }

 private:
  CounterRng rng_;
  std::uint64_t counter_ = 0;
};

}  // namespace prs

// Copyright 2026 The LeCov Authors
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

#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <string_view>

namespace lecov {

/// SplitMix64 (Steele, Lea, Flood 2014). Every random decision in the
/// library (weights of the reference model, mutation choices, campaign
/// coin flips) is drawn from this generator so that a campaign can be
/// replayed bit-for-bit by any reimplementation:
///
///   state += 0x9E3779B97F4A7C15
///   z = state
///   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
///   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
///   return z ^ (z >> 31)
///
/// Bounded draws use rejection sampling on the raw 64-bit output (see
/// `uniform_index`), doubles use the top 53 bits.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  constexpr result_type operator()() noexcept { return next(); }

  constexpr std::uint64_t next() noexcept {
    state_ += kGamma;
    return mix(state_);
  }

  /// Uniform integer in [0, n). n must be positive.
  constexpr std::size_t uniform_index(std::size_t n) noexcept {
    const auto bound = static_cast<std::uint64_t>(n);
    // 2^64 mod bound; draws below it are rejected so the remaining range
    // is a whole multiple of `bound`.
    const std::uint64_t threshold = (0 - bound) % bound;
    std::uint64_t x = next();
    while (x < threshold) x = next();
    return static_cast<std::size_t>(x % bound);
  }

  /// Uniform double in [0, 1).
  constexpr double uniform01() noexcept {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  /// Uniform double in [lo, hi).
  constexpr double uniform(double lo, double hi) noexcept {
    return lo + (hi - lo) * uniform01();
  }

  constexpr bool coin(double p_true = 0.5) noexcept { return uniform01() < p_true; }

  static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

 private:
  std::uint64_t state_;
};

/// Seed of child stream `stream` of `master`:
///   derive_seed(m, s) = mix(m + (s + 1) * gamma)
/// i.e. the (s+1)-th output of SplitMix64(m). Child streams of different
/// indices never depend on how many values another stream consumed.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) noexcept {
  return SplitMix64::mix(master + (stream + 1) * SplitMix64::kGamma);
}

/// 64-bit FNV-1a.
constexpr std::uint64_t fnv1a(std::string_view bytes) noexcept {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (const char c : bytes) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001B3ULL;
  }
  return h;
}

}  // namespace lecov

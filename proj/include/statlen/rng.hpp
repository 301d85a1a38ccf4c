// Copyright 2026 The statlen Authors
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

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

namespace statlen {

// SplitMix64 (Steele, Lea & Flood). Counter-based: the state advances by a
// fixed golden-ratio increment and each output is a bijective finalizer of
// the counter, so streams are random-access and cheap to split. All constants
// are the published ones; any conforming implementation reproduces the same
// byte stream for the same seed.
class SplitMix64 {
 public:
  static constexpr std::uint64_t kIncrement = 0x9E3779B97F4A7C15ULL;
  static constexpr std::uint64_t kMixerA = 0xBF58476D1CE4E5B9ULL;
  static constexpr std::uint64_t kMixerB = 0x94D049BB133111EBULL;

  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  static constexpr std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * kMixerA;
    z = (z ^ (z >> 27)) * kMixerB;
    return z ^ (z >> 31);
  }

  std::uint64_t next() {
    state_ += kIncrement;
    return mix(state_);
  }

  // Uniform double in [0, 1), 53 significant bits.
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // One Box-Muller pair per call: both components are independent standard
  // normals. The first uniform is mapped to (0,1] so the log never sees zero.
  std::complex<double> next_complex_gaussian() {
    const double u1 = 1.0 - next_double();
    const double u2 = next_double();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(t), r * std::sin(t)};
  }

  double next_gaussian() { return next_complex_gaussian().real(); }

 private:
  std::uint64_t state_;
};

// Derives the seed of an independent substream. Both inputs pass through the
// finalizer, so nearby tags (or nearby seeds) do not yield overlapping
// counter ranges. Formula: mix(mix(seed) ^ (mix(tag) + increment)).
inline std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t tag) {
  return SplitMix64::mix(SplitMix64::mix(seed) ^
                         (SplitMix64::mix(tag) + SplitMix64::kIncrement));
}

// Fixed stream tags. Every randomized routine draws from a substream derived
// with one of these, which keeps independent pieces of a run decoupled while
// the whole run stays reproducible from a single seed.
namespace stream {
inline constexpr std::uint64_t kAxiomSamples = 0x01;
inline constexpr std::uint64_t kScalingFactors = 0x02;
inline constexpr std::uint64_t kUnitary = 0x03;
inline constexpr std::uint64_t kProbeVectors = 0x04;
inline constexpr std::uint64_t kRestartBase = 0x1000;
inline constexpr std::uint64_t kClicks = 0x05;
inline constexpr std::uint64_t kCurve = 0x06;
inline constexpr std::uint64_t kInstrumentA = 0x07;
inline constexpr std::uint64_t kInstrumentB = 0x08;
inline constexpr std::uint64_t kWitness = 0x09;
inline constexpr std::uint64_t kOddDegree = 0x0A;
}  // namespace stream

}  // namespace statlen

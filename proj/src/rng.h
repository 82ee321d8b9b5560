//
// Copyright 2026 The LabelDP Authors
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

#ifndef LABELDP_RNG_H_
#define LABELDP_RNG_H_

#include <cstdint>
#include <limits>

namespace labeldp {

// Stream tags used to derive independent generators from one master seed.
enum class StreamTag : uint64_t {
  kPrivatize = 1,
  kRandomizedResponse = 2,
  kScoreSampling = 3,
  kSyntheticData = 4,
  kTraining = 5,
  kModelInit = 6,
  kTest = 99,
};

// Counter-based generator. The i-th output is a SplitMix64 finalization of
// key + (i + 1) * golden_gamma, so a stream is fully determined by its key
// and position. Keys for parallel work are derived from
// (master seed, tag, cell index) with `ForStream`, which keeps sweeps
// reproducible regardless of scheduling.
//
// Satisfies UniformRandomBitGenerator, but the sampling helpers below are
// preferred over <random> distributions because their output is identical
// across standard library implementations.
class Rng {
 public:
  using result_type = uint64_t;

  explicit Rng(uint64_t key) : key_(key) {}

  static Rng ForStream(uint64_t master_seed, StreamTag tag, uint64_t index);

  // Generator keyed off this one's key; does not advance this stream.
  Rng Split(uint64_t index) const;

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }
  result_type operator()() { return NextU64(); }

  uint64_t NextU64();

  // Uniform on [0, 1) with 53 random bits.
  double UniformDouble();

  // Uniform on [0, bound). `bound` must be positive.
  uint64_t UniformInt(uint64_t bound);

  // Standard normal via Box-Muller (no cached second variate).
  double Normal();

  uint64_t key() const { return key_; }
  uint64_t counter() const { return counter_; }

 private:
  uint64_t key_;
  uint64_t counter_ = 0;
};

// SplitMix64 finalizer.
uint64_t Mix64(uint64_t x);

}  // namespace labeldp

#endif  // LABELDP_RNG_H_

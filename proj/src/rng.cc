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

#include "rng.h"

#include <cmath>
#include <numbers>

namespace labeldp {
namespace {

constexpr uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ULL;

}  // namespace

uint64_t Mix64(uint64_t x) {
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Rng Rng::ForStream(uint64_t master_seed, StreamTag tag, uint64_t index) {
  uint64_t key = Mix64(master_seed + kGoldenGamma);
  key = Mix64(key ^ (static_cast<uint64_t>(tag) * 0xd1b54a32d192ed03ULL));
  key = Mix64(key ^ (index * kGoldenGamma + 0x632be59bd9b4e019ULL));
  return Rng(key);
}

Rng Rng::Split(uint64_t index) const {
  return Rng(Mix64(key_ ^ Mix64(index + 0x8cb92ba72f3d8dd7ULL)));
}

uint64_t Rng::NextU64() {
  ++counter_;
  return Mix64(key_ + counter_ * kGoldenGamma);
}

double Rng::UniformDouble() {
  return static_cast<double>(NextU64() >> 11) * 0x1.0p-53;
}

uint64_t Rng::UniformInt(uint64_t bound) {
  // Lemire's multiply-shift with rejection.
  uint64_t x = NextU64();
  __uint128_t m = static_cast<__uint128_t>(x) * bound;
  uint64_t low = static_cast<uint64_t>(m);
  if (low < bound) {
    const uint64_t threshold = -bound % bound;
    while (low < threshold) {
      x = NextU64();
      m = static_cast<__uint128_t>(x) * bound;
      low = static_cast<uint64_t>(m);
    }
  }
  return static_cast<uint64_t>(m >> 64);
}

double Rng::Normal() {
  // 1 - U keeps the logarithm argument in (0, 1].
  const double u1 = 1.0 - UniformDouble();
  const double u2 = UniformDouble();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace labeldp

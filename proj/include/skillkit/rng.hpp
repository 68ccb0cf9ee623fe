// Copyright 2026 The Skillkit Authors
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

#ifndef SKILLKIT_RNG_HPP_
#define SKILLKIT_RNG_HPP_

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string_view>

namespace skillkit {

// 64-bit FNV-1a. Used to derive named substreams ("reset/42",
// "cem/gen3/cand7", ...) from a root seed.
constexpr std::uint64_t fnv1a64(std::string_view s,
                                std::uint64_t basis = 14695981039346656037ULL) {
  std::uint64_t h = basis;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ULL;
  }
  return h;
}

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// PCG32 (XSH-RR). Self-contained so that streams are bit-reproducible across
// platforms and standard-library versions; std::normal_distribution is not.
//
// All randomness in the pipeline flows from one root seed through named
// substreams. A stream remembers its (root, name-hash) identity, so child
// streams can be derived without consuming state.
class Rng {
 public:
  explicit Rng(std::uint64_t root, std::uint64_t name_hash = 0)
      : root_(root), hash_(name_hash) {
    state_ = 0u;
    inc_ = (splitmix64(name_hash ^ 0x5851F42D4C957F2DULL) << 1u) | 1u;
    next_u32();
    state_ += splitmix64(root ^ name_hash);
    next_u32();
  }

  static Rng named(std::uint64_t root, std::string_view name) {
    return Rng(root, fnv1a64(name));
  }

  // Child stream: hashes `name` on top of this stream's identity.
  Rng sub(std::string_view name) const {
    return Rng(root_, fnv1a64(name, hash_ ^ 0xA0761FE2330B5DBFULL));
  }

  std::uint32_t next_u32() {
    std::uint64_t old = state_;
    state_ = old * 6364136223846793005ULL + inc_;
    std::uint32_t xorshifted =
        static_cast<std::uint32_t>(((old >> 18u) ^ old) >> 27u);
    std::uint32_t rot = static_cast<std::uint32_t>(old >> 59u);
    return (xorshifted >> rot) | (xorshifted << ((-rot) & 31u));
  }

  std::uint64_t next_u64() {
    std::uint64_t hi = next_u32();
    return (hi << 32) | next_u32();
  }

  // Uniform in [0, 1).
  double uniform() { return next_u64() * 0x1.0p-64; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Inclusive bounds.
  int uniform_int(int lo, int hi) {
    std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1u;
    return lo + static_cast<int>(next_u64() % span);
  }

  // Standard normal via Box-Muller. No spare caching: two uniforms per draw
  // keeps the stream position independent of call parity.
  double normal() {
    double u1 = (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
    double u2 = next_u64() * 0x1.0p-64;
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
  }

  double normal(double mean, double stddev) { return mean + stddev * normal(); }

  std::uint64_t root() const { return root_; }

 private:
  std::uint64_t state_;
  std::uint64_t inc_;
  std::uint64_t root_;
  std::uint64_t hash_;
};

}  // namespace skillkit

#endif  // SKILLKIT_RNG_HPP_

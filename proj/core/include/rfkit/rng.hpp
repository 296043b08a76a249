// Copyright 2026 The rfkit Authors.
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

#ifndef RFKIT_RNG_HPP_
#define RFKIT_RNG_HPP_

#include <cstdint>
#include <random>

namespace rfkit {

// A seeded random stream. The pair (seed, stream_id) fully determines the
// sequence; distinct stream ids give independent streams. Not thread-safe:
// each worker owns its own stream, derived with split().
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }

  // Child stream keyed on (seed, hash(stream_id, child)).
  RngStream split(std::uint64_t child) const;

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform();
  // Uniform on (0, 1); never returns 0, safe for log().
  double uniform_open();
  // Standard normal (Marsaglia polar method, caches the spare variate).
  double normal();
  // Exponential(1) by inversion.
  double exponential();

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

// SplitMix64 finalizer; used for seed derivation.
std::uint64_t mix64(std::uint64_t x) noexcept;

}  // namespace rfkit

#endif  // RFKIT_RNG_HPP_

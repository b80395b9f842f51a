// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <utility>

namespace fks {

using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

// Philox4x32 with 10 rounds (Salmon et al., SC'11).
PhiloxCounter philox4x32_10(PhiloxCounter ctr, PhiloxKey key);

// Counter-based stream. The Philox key is the seed, the counter block holds
// (draw counter, stream id), so the n-th draw of a stream is a pure function
// of (seed, stream_id, n).
class RngStream {
 public:
  RngStream() = default;
  RngStream(std::uint64_t seed, std::uint64_t stream_id, std::uint64_t counter = 0)
      : seed_(seed), stream_id_(stream_id), counter_(counter) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }
  std::uint64_t counter() const { return counter_; }

  PhiloxCounter next_block();
  std::uint64_t next_u64();
  // Uniform on the open interval (0, 1).
  double uniform();
  // Exp(1).
  double exponential();
  // Two independent standard normals (Box-Muller).
  std::pair<double, double> normal_pair();

  friend bool operator==(const RngStream&, const RngStream&) = default;

 private:
  std::uint64_t seed_ = 0;
  std::uint64_t stream_id_ = 0;
  std::uint64_t counter_ = 0;
};

}  // namespace fks

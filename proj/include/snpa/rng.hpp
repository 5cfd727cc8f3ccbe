#pragma once

#include <array>
#include <cstdint>

namespace snpa {

// Deterministic random stream identified by (seed, stream_id).
//
// The engine is xoshiro256** with its state filled by SplitMix64 from a hash
// of both identifiers, so a replication index can be used directly as the
// stream id. Every variate below is computed by an explicit formula from the
// engine output; no std:: distribution objects are involved.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  std::uint64_t next_u64();

  // Uniform on the open interval (0, 1).
  double uniform();
  // Standard exponential.
  double exponential();
  // Standard normal (Box-Muller, one output per call).
  double normal();
  // Gamma(shape, 1), Marsaglia-Tsang.
  double gamma(double shape);

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::array<std::uint64_t, 4> state_{};
};

}  // namespace snpa

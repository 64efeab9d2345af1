#pragma once

#include <cstdint>
#include <string_view>

namespace aic {

// Deterministic splitmix64 stream addressed by (master seed, stream name).
// Each named stream is an independent generator: drawing from one never
// perturbs another, and the sequence depends only on the seed and the name.
class StreamRng {
 public:
  StreamRng(std::uint64_t master_seed, std::string_view stream_name);

  std::uint64_t next_u64();
  // Uniform in [0, 1), 53-bit resolution.
  double next_double();
  double uniform(double lo, double hi);

 private:
  std::uint64_t state_;
};

}  // namespace aic

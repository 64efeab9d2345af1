#pragma once

#include <cstdint>
#include <string_view>
#include <utility>

#include "aic/dynamics.hpp"
#include "aic/rng.hpp"

namespace aic {

// Bernoulli pass/drop gate on a transmitted signal. Gate 1 passes the signal,
// gate 0 replaces it with zeros. Each channel owns a named RNG substream, so
// sensor and actuator draws never interleave.
class DropoutChannel {
 public:
  // Throws ConfigError unless 0 <= p_pass <= 1.
  DropoutChannel(double p_pass, std::uint64_t master_seed, std::string_view stream_name);

  // 1 with probability p_pass, else 0.
  int sample();
  // Gates the signal: (signal, 1) on pass, (zeros, 0) on drop.
  std::pair<Vec, int> apply(const Vec& signal);

  double pass_probability() const { return p_pass_; }

 private:
  double p_pass_;
  StreamRng rng_;
};

}  // namespace aic

#include "aic/channels.hpp"

#include "aic/errors.hpp"

namespace aic {

DropoutChannel::DropoutChannel(double p_pass, std::uint64_t master_seed,
                               std::string_view stream_name)
    : p_pass_(p_pass), rng_(master_seed, stream_name) {
  if (!(p_pass >= 0.0 && p_pass <= 1.0)) {
    throw ConfigError("pass probability: must lie in [0, 1]");
  }
}

int DropoutChannel::sample() {
  return rng_.next_double() < p_pass_ ? 1 : 0;
}

std::pair<Vec, int> DropoutChannel::apply(const Vec& signal) {
  const int gate = sample();
  if (gate) return {signal, 1};
  return {Vec::Zero(signal.size()), 0};
}

}  // namespace aic

#pragma once

#include <stdexcept>
#include <string>

namespace aic {

// Invalid configuration or argument shapes; message names the offending key.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Plant evaluation or integration produced a non-finite value.
struct DynamicsBlowup : std::runtime_error {
  explicit DynamicsBlowup(const std::string& what) : std::runtime_error(what) {}
};

struct IdentifierDiverged : std::runtime_error {
  explicit IdentifierDiverged(const std::string& what) : std::runtime_error(what) {}
};

struct CriticDiverged : std::runtime_error {
  explicit CriticDiverged(const std::string& what) : std::runtime_error(what) {}
};

struct ActorDiverged : std::runtime_error {
  explicit ActorDiverged(const std::string& what) : std::runtime_error(what) {}
};

// Metric requested on data where its formula is undefined (zero range, constant series).
struct MetricUndefined : std::runtime_error {
  explicit MetricUndefined(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace aic

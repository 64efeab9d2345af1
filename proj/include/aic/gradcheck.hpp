#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "aic/dynamics.hpp"

namespace aic {

struct GradCheckResult {
  std::string name;
  double worst_rel_err = 0.0;
  double threshold = 0.0;
  bool pass() const { return worst_rel_err < threshold; }
};

// Frobenius-norm relative error with a small floor, the comparison used by
// every finite-difference oracle here.
double relative_error(const Mat& analytic, const Mat& numeric);

// Central finite-difference oracles over seeded random nets and inputs:
//   identifier input Jacobian (1e-5), critic value gradient (1e-6),
//   actor command-space gradient of the composed one-step objective (1e-4),
//   actor output-weight update direction against the same objective (1e-4).
std::vector<GradCheckResult> run_gradient_checks(std::uint64_t seed, int points = 100);

}  // namespace aic

#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "fock_dist.hpp"

namespace gclone {

struct VerifyConfig {
  std::uint64_t seed = 20070101;
  /// Random idlers drawn by the ordering suite.
  std::size_t trials = 200;
  /// Dominance tolerance of the ordering suite.
  double tol = 1e-10;
  /// Empty runs every suite.
  std::vector<std::string> suites;
};

struct SuiteResult {
  std::string name;
  bool passed = false;
  std::size_t checks = 0;
  std::size_t violations = 0;
  /// Largest observed deviation in the suite's own metric.
  double worst = 0.0;
  std::string detail;
};

const std::vector<std::string>& suite_names();

/// Throws ParameterError on unknown suite names or a negative tolerance.
std::vector<SuiteResult> run_verification(const VerifyConfig& config);

nlohmann::json to_json(const VerifyConfig& config, const std::vector<SuiteResult>& results);

/// Random diagonal state on |0>..|max_photons>: a number state, a two-point
/// mixture, or a dense mixture, with equal probability.
DiagonalState random_idler(std::mt19937_64& rng, std::size_t max_photons);

}  // namespace gclone

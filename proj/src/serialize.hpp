#pragma once

#include <span>
#include <string>

#include <json.hpp>

#include "fock_dist.hpp"
#include "gaussian.hpp"
#include "merit.hpp"

namespace gclone {

/// {"probs": [...], "tail_mass": x}
nlohmann::json to_json(const DiagonalState& state);
DiagonalState diagonal_state_from_json(const nlohmann::json& j);

/// {"mean": [...], "cov": [[...], ...]}
nlohmann::json to_json(const GaussianState& state);
GaussianState gaussian_state_from_json(const nlohmann::json& j);

nlohmann::json to_json(const IdlerOptimum& opt);
nlohmann::json to_json(const MeritReport& row);

inline constexpr const char* kMeritCsvHeader = "s,m0,delta_clon,delta_numeric,wigner_l1,classical";

/// Header line plus one line per row, numbers printed round-trip exact.
std::string merit_csv(std::span<const MeritReport> rows);
std::string merit_json(std::span<const MeritReport> rows);
/// Two-curve plot (quantum deficiency and Wigner-Gaussian distance against s).
std::string merit_svg(std::span<const MeritReport> rows);

}  // namespace gclone

#include "fock_dist.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <fmt/format.h>

#include "error.hpp"

namespace gclone {

namespace {

constexpr double kSumSlack = 1e-12;

double checked_tail(std::span<const double> probs, double tail) {
  for (std::size_t l = 0; l < probs.size(); ++l) {
    if (!(probs[l] >= 0.0) || !std::isfinite(probs[l])) {
      throw ParameterError(fmt::format("probability at index {} is {}, must be finite and >= 0", l, probs[l]));
    }
  }
  const double sum = std::accumulate(probs.begin(), probs.end(), 0.0);
  if (sum > 1.0 + kSumSlack) {
    throw ParameterError(fmt::format("probabilities sum to {} > 1", sum));
  }
  if (!std::isfinite(tail) || tail < -kSumSlack) {
    throw ParameterError(fmt::format("tail mass {} is negative", tail));
  }
  return tail;
}

}  // namespace

ThermalParams::ThermalParams(double s) : s_(s) {
  if (!(s >= 0.0 && s < 1.0)) {
    throw ParameterError(fmt::format("thermal parameter s = {} outside [0, 1)", s));
  }
}

double ThermalParams::beta() const {
  return s_ == 0.0 ? std::numeric_limits<double>::infinity() : -std::log(s_);
}

DiagonalState::DiagonalState(std::vector<double> probs) : probs_(std::move(probs)) {
  if (probs_.empty()) throw ParameterError("diagonal state needs at least one entry");
  const double sum = std::accumulate(probs_.begin(), probs_.end(), 0.0);
  tail_mass_ = checked_tail(probs_, std::max(0.0, 1.0 - sum));
}

DiagonalState::DiagonalState(std::vector<double> probs, double tail_mass) : probs_(std::move(probs)) {
  if (probs_.empty()) throw ParameterError("diagonal state needs at least one entry");
  tail_mass_ = checked_tail(probs_, tail_mass);
}

bool DiagonalState::is_vacuum() const {
  return probs_[0] == 1.0 && std::all_of(probs_.begin() + 1, probs_.end(), [](double p) { return p == 0.0; });
}

DiagonalState thermal_distribution(ThermalParams params, std::size_t cutoff) {
  const double s = params.s();
  std::vector<double> probs(cutoff + 1, 0.0);
  double power = 1.0;
  for (std::size_t l = 0; l <= cutoff; ++l) {
    probs[l] = (1.0 - s) * power;
    power *= s;
  }
  return DiagonalState(std::move(probs), power);
}

DiagonalState number_state(std::size_t k, std::size_t cutoff) {
  if (k > cutoff) {
    throw IndexError(fmt::format("number state |{}> does not fit under cutoff {}", k, cutoff));
  }
  std::vector<double> probs(cutoff + 1, 0.0);
  probs[k] = 1.0;
  return DiagonalState(std::move(probs), 0.0);
}

std::size_t default_cutoff(double ratio_max, double tail) {
  constexpr std::size_t kMinCutoff = 16;
  if (!(ratio_max >= 0.0 && ratio_max < 1.0)) {
    throw ParameterError(fmt::format("geometric ratio {} outside [0, 1)", ratio_max));
  }
  if (!(tail > 0.0 && tail < 1.0)) throw ParameterError(fmt::format("tail target {} outside (0, 1)", tail));
  if (ratio_max == 0.0) return kMinCutoff;
  const double n = std::ceil(std::log(tail) / std::log(ratio_max));
  return std::max(kMinCutoff, static_cast<std::size_t>(n));
}

Bounded l1_distance(const DiagonalState& p, const DiagonalState& q) {
  const std::size_t n = std::max(p.size(), q.size());
  double sum = 0.0;
  for (std::size_t l = 0; l < n; ++l) sum += std::abs(p.at(l) - q.at(l));
  return {sum, p.tail_mass() + q.tail_mass()};
}

double cdf(const DiagonalState& p, std::size_t m) {
  if (m > p.cutoff()) {
    throw IndexError(fmt::format("cdf index {} beyond cutoff {}", m, p.cutoff()));
  }
  const auto probs = p.probs();
  return std::accumulate(probs.begin(), probs.begin() + static_cast<std::ptrdiff_t>(m) + 1, 0.0);
}

bool stochastically_dominated(const DiagonalState& p, const DiagonalState& q, double tol) {
  if (!(tol >= 0.0)) throw ParameterError(fmt::format("dominance tolerance {} must be >= 0", tol));
  const std::size_t n = std::max(p.size(), q.size());
  double cp = 0.0;
  double cq = 0.0;
  for (std::size_t m = 0; m < n; ++m) {
    cp += p.at(m);
    cq += q.at(m);
    if (cp < cq - tol) return false;
  }
  return true;
}

DiagonalState mixture(std::span<const double> weights, std::span<const DiagonalState> states) {
  if (weights.size() != states.size() || states.empty()) {
    throw ParameterError("mixture needs one weight per state and at least one state");
  }
  std::size_t n = 0;
  for (const auto& st : states) n = std::max(n, st.size());
  std::vector<double> probs(n, 0.0);
  double tail = 0.0;
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (!(weights[i] >= 0.0)) throw ParameterError(fmt::format("mixture weight {} is negative", weights[i]));
    const auto src = states[i].probs();
    for (std::size_t l = 0; l < src.size(); ++l) probs[l] += weights[i] * src[l];
    tail += weights[i] * states[i].tail_mass();
  }
  return DiagonalState(std::move(probs), tail);
}

}  // namespace gclone

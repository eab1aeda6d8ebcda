#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace gclone {

/// Thermal parameter s = exp(-beta) of the equilibrium state (1-s) sum_n s^n |n><n|.
/// Valid range is [0, 1); s = 0 is the vacuum.
class ThermalParams {
 public:
  explicit ThermalParams(double s);

  double s() const { return s_; }
  /// Inverse temperature -ln s; +infinity at s = 0.
  double beta() const;

 private:
  double s_;
};

/// Truncated photon-number distribution. Index l is the photon number; mass
/// beyond the cutoff is carried explicitly in tail_mass().
class DiagonalState {
 public:
  /// Tail mass is taken as 1 - sum(probs).
  explicit DiagonalState(std::vector<double> probs);
  DiagonalState(std::vector<double> probs, double tail_mass);

  std::span<const double> probs() const { return probs_; }
  std::size_t cutoff() const { return probs_.size() - 1; }
  std::size_t size() const { return probs_.size(); }
  double tail_mass() const { return tail_mass_; }

  /// Zero beyond the cutoff.
  double at(std::size_t l) const { return l < probs_.size() ? probs_[l] : 0.0; }
  bool is_vacuum() const;

 private:
  std::vector<double> probs_;
  double tail_mass_;
};

/// A value known only up to an additive uncertainty (truncation bound).
struct Bounded {
  double value;
  double uncertainty;
};

inline constexpr double kDominanceTolerance = 1e-12;
inline constexpr double kDefaultTail = 1e-12;

/// (1-s) s^l for l <= cutoff, tail s^(cutoff+1).
DiagonalState thermal_distribution(ThermalParams params, std::size_t cutoff);

/// |k><k| truncated at cutoff.
DiagonalState number_state(std::size_t k, std::size_t cutoff);

/// Smallest cutoff whose geometric tail ratio^(cutoff+1) is below `tail`,
/// never less than 16.
std::size_t default_cutoff(double ratio_max, double tail = kDefaultTail);

/// Sum_l |p_l - q_l| over the zero-padded common support. The true l1 distance
/// of the untruncated laws lies within value +- (tail_p + tail_q).
Bounded l1_distance(const DiagonalState& p, const DiagonalState& q);

/// Partial sum p_0 + ... + p_m.
double cdf(const DiagonalState& p, std::size_t m);

/// True when p is stochastically smaller than q: every partial sum of p is at
/// least the matching partial sum of q (less tol), up to the common cutoff.
bool stochastically_dominated(const DiagonalState& p, const DiagonalState& q,
                              double tol = kDominanceTolerance);

/// Convex combination sum_i weights[i] * states[i], padded to the largest cutoff.
DiagonalState mixture(std::span<const double> weights, std::span<const DiagonalState> states);

}  // namespace gclone

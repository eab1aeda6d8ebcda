#pragma once

#include <cstddef>

#include "fock_dist.hpp"

namespace gclone {

/// Phase-insensitive covariant amplifier a_out = sqrt(G) a_in + sqrt(G-1) b^dagger
/// with the idler mode b prepared in a diagonal state. The idler is diagonal
/// because phase averaging never increases the figure of merit.
class AmplifierSpec {
 public:
  AmplifierSpec(double gain, DiagonalState idler);

  double gain() const { return gain_; }
  const DiagonalState& idler() const { return idler_; }

  /// (G-1)/G, the squared two-mode-squeezing ratio tanh^2(r).
  double gamma() const { return (gain_ - 1.0) / gain_; }
  /// tanh(r).
  double tanh_ratio() const;
  /// g with exp(g) = cosh(r) = sqrt(G).
  double log_cosh() const;
  /// Squeezing strength r with cosh(r) = sqrt(G).
  double squeezing() const;

 private:
  double gain_;
  DiagonalState idler_;
};

/// Parameters of the thermal-to-vacuum input reduction.
///
/// A thermal input with parameter s is one output arm of a two-mode squeezer
/// fed with vacuum. Combining the amplifier with that squeezer gives a single
/// squeezer of gain G/(1-s), acting on a vacuum signal and on an idler mode
/// obtained by passing the original idler through a beamsplitter whose other
/// port is vacuum. The idler photons survive with probability
///   eta = (G-1)(1-s) / (G-1+s).
struct ReductionParams {
  double s;
  double gain;
  double eta;
  /// (G-1+s)/G, the geometric ratio of the output for a vacuum idler.
  double gamma_eff;

  static ReductionParams compute(ThermalParams s, double gain);
  /// 1/(1 - gamma_eff) = G/(1-s).
  double effective_gain() const { return 1.0 / (1.0 - gamma_eff); }
};

/// Output photon law for a vacuum signal. For idler |k> the law is
/// (1-gamma)^(k+1) gamma^l C(l+k, k); mixed idlers are combined linearly.
DiagonalState output_vacuum_input(const DiagonalState& idler, double gain, std::size_t cutoff);

/// Closed-form partial sum over l <= m of the |k>-idler vacuum-input law:
/// 1 - gamma^(m+1) sum_{r<=k} (1-gamma)^r gamma^(k-r) C(k+m+1, r).
double cdf_identity(std::size_t k, std::size_t m, double gamma);

/// Binomial photon loss with transmissivity eta:
/// out_p = sum_{k>=p} tau_k C(k,p) eta^p (1-eta)^(k-p).
DiagonalState loss_channel(const DiagonalState& tau, double eta);

/// Output photon law for thermal input s, computed through the reduction to a
/// vacuum signal. s = 0 skips the reduction.
DiagonalState output_thermal_input(ThermalParams s, const AmplifierSpec& spec, std::size_t cutoff);

inline constexpr std::size_t kOracleMaxCutoff = 160;

/// Brute-force reference for the amplifier: applies exp(r(a^dag b^dag - a b)),
/// cosh(r) = sqrt(G), on the two-mode Fock space truncated at `cutoff` photons
/// per mode, to every |n, k> weighted by input_n idler_k, then traces out the
/// idler. The deficit 1 - sum(output) lands in tail_mass().
DiagonalState two_mode_squeezer_oracle(const DiagonalState& input, const DiagonalState& idler, double gain,
                                       std::size_t cutoff);

}  // namespace gclone

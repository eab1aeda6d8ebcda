#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>

#include <Eigen/Dense>

#include "fock_dist.hpp"

namespace gclone {

// Quadrature convention: a = (q + i p) / sqrt(2), vacuum variance 1/2 per
// quadrature, ordering (q_0, p_0, q_1, p_1, ...). A displaced thermal state
// D(alpha) has mean sqrt(2) (Re alpha, Im alpha) and variance (1+s)/(2(1-s)).

inline constexpr double kVacuumVariance = 0.5;

/// Mean vector and covariance matrix of an m-mode Gaussian state.
class GaussianState {
 public:
  GaussianState(Eigen::VectorXd mean, Eigen::MatrixXd cov);

  const Eigen::VectorXd& mean() const { return mean_; }
  const Eigen::MatrixXd& cov() const { return cov_; }
  std::size_t modes() const { return static_cast<std::size_t>(mean_.size() / 2); }

  /// Symplectic eigenvalues, ascending. Physical states have all >= 1/2.
  Eigen::VectorXd symplectic_eigenvalues() const;
  bool is_physical(double tol = 1e-9) const;

 private:
  Eigen::VectorXd mean_;
  Eigen::MatrixXd cov_;
};

/// Omega = direct sum of ((0, 1), (-1, 0)).
Eigen::MatrixXd symplectic_form(std::size_t modes);

/// Unitary Gaussian map x -> S x.
class SymplecticMap {
 public:
  explicit SymplecticMap(Eigen::MatrixXd matrix);

  const Eigen::MatrixXd& matrix() const { return s_; }
  std::size_t modes() const { return static_cast<std::size_t>(s_.rows() / 2); }
  /// max |S^T Omega S - Omega|
  double symplectic_residual() const;

  GaussianState apply(const GaussianState& state) const;

 private:
  Eigen::MatrixXd s_;
};

/// Gaussian channel: mean -> X mean, cov -> X cov X^T + Y.
class GaussianChannel {
 public:
  GaussianChannel(Eigen::MatrixXd x, Eigen::MatrixXd y);
  static GaussianChannel from_unitary(const SymplecticMap& map);
  /// X = sqrt(gain) I, Y = noise I. Covariances scale by `gain` itself rather
  /// than by sqrt(gain)^2, so integer gains act exactly.
  static GaussianChannel phase_insensitive(double gain, double noise, std::size_t modes = 1);

  const Eigen::MatrixXd& x() const { return x_; }
  const Eigen::MatrixXd& y() const { return y_; }
  std::size_t modes() const { return static_cast<std::size_t>(x_.rows() / 2); }

  /// Smallest eigenvalue of Y + (i/2)(Omega - X Omega X^T); >= 0 for a channel.
  double complete_positivity_margin() const;

  GaussianState apply(const GaussianState& state) const;

 private:
  Eigen::MatrixXd x_;
  Eigen::MatrixXd y_;
  std::optional<double> gain_;
};

GaussianState displaced_thermal(std::complex<double> alpha, ThermalParams s);

/// Product state of the given single- or multi-mode factors.
GaussianState tensor(std::span<const GaussianState> factors);

/// Discrete Fourier mode mixing a_k -> n^(-1/2) sum_l exp(2 pi i k l / n) a_l.
SymplecticMap fourier_map(std::size_t n);

/// Standard 50-50 beamsplitter: a0 -> (a0 - a1)/sqrt(2), a1 -> (a0 + a1)/sqrt(2).
SymplecticMap beamsplitter();

/// Two-mode squeezer with cosh(r) = sqrt(G): a -> sqrt(G) a + sqrt(G-1) b^dag.
SymplecticMap two_mode_squeezer(double gain);

/// Phase-insensitive amplifier of gain G whose idler is thermal with parameter
/// idler_s (0 for vacuum): mean -> sqrt(G) mean, cov -> G cov + (G-1) V_idler I.
/// G = 1 is the identity channel.
GaussianChannel amplifier_channel(double gain, ThermalParams idler_s = ThermalParams(0.0));

/// Reduced state on one mode.
GaussianState marginal(const GaussianState& state, std::size_t mode);

/// Intermediate states of the n -> m cloner.
struct ClonePipeline {
  /// Input after the first Fourier transform, all n modes.
  GaussianState concentrated;
  /// Mode 0 of `concentrated` after amplification by G = m/n.
  GaussianState amplified;
  /// Amplified mode plus m-1 thermal ancillas after the second Fourier transform.
  GaussianState output;
};

/// n -> m cloning of (Phi^alpha)^{(x) n}: concentrate by Fourier transform, keep
/// mode 0, amplify with gain m/n and a vacuum idler, adjoin m-1 ancillas in the
/// thermal state s, and distribute by Fourier transform on m modes.
ClonePipeline clone_pipeline_stages(std::size_t n, std::size_t m, std::complex<double> alpha, ThermalParams s);
GaussianState clone_pipeline(std::size_t n, std::size_t m, std::complex<double> alpha, ThermalParams s);

struct ThermalFit {
  double s_eff;
  std::complex<double> alpha_eff;
};

/// Reads a single-mode isotropic state as a displaced thermal state:
/// nu = sqrt(det cov), s_eff = (2 nu - 1) / (2 nu + 1), alpha = mean / sqrt(2).
ThermalFit williamson_thermal_parameter(const GaussianState& state);

struct CovarianceReport {
  double max_mean_residual = 0.0;
  double max_cov_residual = 0.0;
  bool passed(double tol = 1e-10) const { return max_mean_residual < tol && max_cov_residual < tol; }
};

/// Displacement covariance at the level of moments. `channel` maps an input
/// displacement alpha to the output state; every output mode must move by
/// mean_gain * sqrt(2) (Re alpha, Im alpha) while covariances stay put.
CovarianceReport covariance_check(const std::function<GaussianState(std::complex<double>)>& channel,
                                  double mean_gain, std::span<const std::complex<double>> alpha_grid);

}  // namespace gclone

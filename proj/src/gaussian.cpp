#include "gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <Eigen/Eigenvalues>
#include <fmt/format.h>

#include "error.hpp"

namespace gclone {

namespace {

Eigen::Index dim(std::size_t modes) { return static_cast<Eigen::Index>(2 * modes); }

double thermal_variance(double s) { return (1.0 + s) / (2.0 * (1.0 - s)); }

}  // namespace

GaussianState::GaussianState(Eigen::VectorXd mean, Eigen::MatrixXd cov) : mean_(std::move(mean)), cov_(std::move(cov)) {
  if (mean_.size() == 0 || mean_.size() % 2 != 0) {
    throw ParameterError(fmt::format("mean vector length {} is not a positive even number", mean_.size()));
  }
  if (cov_.rows() != mean_.size() || cov_.cols() != mean_.size()) {
    throw ParameterError(fmt::format("covariance is {}x{}, expected {}x{}", cov_.rows(), cov_.cols(), mean_.size(),
                                     mean_.size()));
  }
  const double asym = (cov_ - cov_.transpose()).cwiseAbs().maxCoeff();
  if (!(asym <= 1e-12 * std::max(1.0, cov_.cwiseAbs().maxCoeff()))) {
    throw ParameterError(fmt::format("covariance is not symmetric (max asymmetry {:.3e})", asym));
  }
}

Eigen::VectorXd GaussianState::symplectic_eigenvalues() const {
  const Eigen::MatrixXd omega_v = symplectic_form(modes()) * cov_;
  Eigen::EigenSolver<Eigen::MatrixXd> eig(omega_v, false);
  // Eigenvalues come in pairs +-i nu.
  std::vector<double> nu;
  for (Eigen::Index i = 0; i < eig.eigenvalues().size(); ++i) nu.push_back(std::abs(eig.eigenvalues()(i).imag()));
  std::sort(nu.begin(), nu.end());
  Eigen::VectorXd out(static_cast<Eigen::Index>(modes()));
  for (std::size_t k = 0; k < modes(); ++k) out(static_cast<Eigen::Index>(k)) = 0.5 * (nu[2 * k] + nu[2 * k + 1]);
  return out;
}

bool GaussianState::is_physical(double tol) const {
  return symplectic_eigenvalues().minCoeff() >= kVacuumVariance - tol;
}

Eigen::MatrixXd symplectic_form(std::size_t modes) {
  Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(dim(modes), dim(modes));
  for (Eigen::Index k = 0; k < static_cast<Eigen::Index>(modes); ++k) {
    omega(2 * k, 2 * k + 1) = 1.0;
    omega(2 * k + 1, 2 * k) = -1.0;
  }
  return omega;
}

SymplecticMap::SymplecticMap(Eigen::MatrixXd matrix) : s_(std::move(matrix)) {
  if (s_.rows() == 0 || s_.rows() != s_.cols() || s_.rows() % 2 != 0) {
    throw ParameterError(fmt::format("symplectic matrix must be square of even size, got {}x{}", s_.rows(), s_.cols()));
  }
  const double res = symplectic_residual();
  if (!(res <= 1e-10)) throw ParameterError(fmt::format("matrix is not symplectic (residual {:.3e})", res));
}

double SymplecticMap::symplectic_residual() const {
  const Eigen::MatrixXd omega = symplectic_form(modes());
  return (s_.transpose() * omega * s_ - omega).cwiseAbs().maxCoeff();
}

GaussianState SymplecticMap::apply(const GaussianState& state) const {
  if (state.modes() != modes()) {
    throw ParameterError(fmt::format("map acts on {} modes, state has {}", modes(), state.modes()));
  }
  Eigen::MatrixXd cov = s_ * state.cov() * s_.transpose();
  cov = 0.5 * (cov + cov.transpose()).eval();
  return GaussianState(s_ * state.mean(), std::move(cov));
}

GaussianChannel::GaussianChannel(Eigen::MatrixXd x, Eigen::MatrixXd y) : x_(std::move(x)), y_(std::move(y)) {
  if (x_.rows() == 0 || x_.rows() % 2 != 0 || x_.rows() != x_.cols() || y_.rows() != x_.rows() ||
      y_.cols() != x_.cols()) {
    throw ParameterError("channel matrices X and Y must be square, equal-sized and even-dimensional");
  }
  if ((y_ - y_.transpose()).cwiseAbs().maxCoeff() > 1e-12) throw ParameterError("noise matrix Y is not symmetric");
  const double margin = complete_positivity_margin();
  if (margin < -1e-10) {
    throw ParameterError(fmt::format("(X, Y) is not a quantum channel (margin {:.3e})", margin));
  }
}

GaussianChannel GaussianChannel::from_unitary(const SymplecticMap& map) {
  return GaussianChannel(map.matrix(), Eigen::MatrixXd::Zero(map.matrix().rows(), map.matrix().cols()));
}

GaussianChannel GaussianChannel::phase_insensitive(double gain, double noise, std::size_t modes) {
  const auto dim = static_cast<Eigen::Index>(2 * modes);
  GaussianChannel ch(std::sqrt(gain) * Eigen::MatrixXd::Identity(dim, dim), noise * Eigen::MatrixXd::Identity(dim, dim));
  ch.gain_ = gain;
  return ch;
}

double GaussianChannel::complete_positivity_margin() const {
  const Eigen::MatrixXd omega = symplectic_form(modes());
  const Eigen::MatrixXd skew = omega - x_ * omega * x_.transpose();
  const Eigen::MatrixXcd h = y_.cast<std::complex<double>>() + std::complex<double>(0.0, 0.5) * skew.cast<std::complex<double>>();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(h, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().minCoeff();
}

GaussianState GaussianChannel::apply(const GaussianState& state) const {
  if (state.modes() != modes()) {
    throw ParameterError(fmt::format("channel acts on {} modes, state has {}", modes(), state.modes()));
  }
  Eigen::MatrixXd cov = gain_ ? Eigen::MatrixXd(*gain_ * state.cov() + y_) : Eigen::MatrixXd(x_ * state.cov() * x_.transpose() + y_);
  cov = 0.5 * (cov + cov.transpose()).eval();
  return GaussianState(x_ * state.mean(), std::move(cov));
}

GaussianState displaced_thermal(std::complex<double> alpha, ThermalParams s) {
  Eigen::Vector2d mean(std::numbers::sqrt2 * alpha.real(), std::numbers::sqrt2 * alpha.imag());
  return GaussianState(mean, thermal_variance(s.s()) * Eigen::Matrix2d::Identity());
}

GaussianState tensor(std::span<const GaussianState> factors) {
  if (factors.empty()) throw ParameterError("tensor product of zero factors");
  Eigen::Index n = 0;
  for (const auto& f : factors) n += f.mean().size();
  Eigen::VectorXd mean(n);
  Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(n, n);
  Eigen::Index at = 0;
  for (const auto& f : factors) {
    const Eigen::Index d = f.mean().size();
    mean.segment(at, d) = f.mean();
    cov.block(at, at, d, d) = f.cov();
    at += d;
  }
  return GaussianState(std::move(mean), std::move(cov));
}

SymplecticMap fourier_map(std::size_t n) {
  if (n < 1) throw ParameterError("Fourier map needs at least one mode");
  Eigen::MatrixXd s(dim(n), dim(n));
  const double norm = 1.0 / std::sqrt(static_cast<double>(n));
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t l = 0; l < n; ++l) {
      // Reduce k*l mod n first so the phase is exact for the trivial entries.
      const double phase = 2.0 * std::numbers::pi * static_cast<double>((k * l) % n) / static_cast<double>(n);
      const double re = norm * std::cos(phase);
      const double im = norm * std::sin(phase);
      const auto r = static_cast<Eigen::Index>(2 * k);
      const auto c = static_cast<Eigen::Index>(2 * l);
      s(r, c) = re;
      s(r, c + 1) = -im;
      s(r + 1, c) = im;
      s(r + 1, c + 1) = re;
    }
  }
  return SymplecticMap(std::move(s));
}

SymplecticMap beamsplitter() {
  const double h = std::numbers::sqrt2 / 2.0;
  Eigen::MatrixXd s(4, 4);
  s << h, 0, -h, 0,  //
      0, h, 0, -h,   //
      h, 0, h, 0,    //
      0, h, 0, h;
  return SymplecticMap(std::move(s));
}

SymplecticMap two_mode_squeezer(double gain) {
  if (!(gain >= 1.0) || !std::isfinite(gain)) throw ParameterError(fmt::format("squeezer gain {} must be >= 1", gain));
  const double c = std::sqrt(gain);
  const double sh = std::sqrt(gain - 1.0);
  Eigen::MatrixXd s(4, 4);
  s << c, 0, sh, 0,  //
      0, c, 0, -sh,  //
      sh, 0, c, 0,   //
      0, -sh, 0, c;
  return SymplecticMap(std::move(s));
}

GaussianChannel amplifier_channel(double gain, ThermalParams idler_s) {
  if (!(gain >= 1.0) || !std::isfinite(gain)) {
    throw ParameterError(fmt::format("amplifier gain {} must be finite and >= 1", gain));
  }
  return GaussianChannel::phase_insensitive(gain, (gain - 1.0) * thermal_variance(idler_s.s()));
}

GaussianState marginal(const GaussianState& state, std::size_t mode) {
  if (mode >= state.modes()) {
    throw IndexError(fmt::format("mode {} out of range for a {}-mode state", mode, state.modes()));
  }
  const auto i = static_cast<Eigen::Index>(2 * mode);
  return GaussianState(state.mean().segment<2>(i), state.cov().block<2, 2>(i, i));
}

ClonePipeline clone_pipeline_stages(std::size_t n, std::size_t m, std::complex<double> alpha, ThermalParams s) {
  if (n < 1 || m < n) throw ParameterError(fmt::format("cloning needs m >= n >= 1, got n={}, m={}", n, m));
  const GaussianState input = displaced_thermal(alpha, s);
  const std::vector<GaussianState> copies(n, input);
  GaussianState concentrated = fourier_map(n).apply(tensor(copies));

  const double gain = static_cast<double>(m) / static_cast<double>(n);
  GaussianState amplified = amplifier_channel(gain).apply(marginal(concentrated, 0));

  std::vector<GaussianState> parts(m, displaced_thermal(0.0, s));
  parts[0] = amplified;
  GaussianState output = fourier_map(m).apply(tensor(parts));
  return {std::move(concentrated), std::move(amplified), std::move(output)};
}

GaussianState clone_pipeline(std::size_t n, std::size_t m, std::complex<double> alpha, ThermalParams s) {
  return clone_pipeline_stages(n, m, alpha, s).output;
}

ThermalFit williamson_thermal_parameter(const GaussianState& state) {
  if (state.modes() != 1) {
    throw UnsupportedStateError(fmt::format("thermal fit needs a single-mode state, got {} modes", state.modes()));
  }
  const auto& v = state.cov();
  if (std::abs(v(0, 1)) > 1e-9 || std::abs(v(0, 0) - v(1, 1)) > 1e-9) {
    throw UnsupportedStateError("thermal fit needs an isotropic covariance (phase-insensitive state)");
  }
  const double nu = std::sqrt(v.determinant());
  if (nu < kVacuumVariance - 1e-9) throw UnsupportedStateError(fmt::format("unphysical state, nu = {}", nu));
  const double s_eff = std::max(0.0, (2.0 * nu - 1.0) / (2.0 * nu + 1.0));
  return {s_eff, {state.mean()(0) / std::numbers::sqrt2, state.mean()(1) / std::numbers::sqrt2}};
}

CovarianceReport covariance_check(const std::function<GaussianState(std::complex<double>)>& channel,
                                  double mean_gain, std::span<const std::complex<double>> alpha_grid) {
  CovarianceReport report;
  const GaussianState base = channel(0.0);
  for (const auto alpha : alpha_grid) {
    const GaussianState out = channel(alpha);
    if (out.modes() != base.modes()) throw ParameterError("channel output mode count depends on alpha");
    const Eigen::Vector2d shift = mean_gain * std::numbers::sqrt2 * Eigen::Vector2d(alpha.real(), alpha.imag());
    for (std::size_t k = 0; k < out.modes(); ++k) {
      const auto i = static_cast<Eigen::Index>(2 * k);
      const Eigen::Vector2d moved = out.mean().segment<2>(i) - base.mean().segment<2>(i);
      report.max_mean_residual = std::max(report.max_mean_residual, (moved - shift).norm());
    }
    report.max_cov_residual = std::max(report.max_cov_residual, (out.cov() - base.cov()).cwiseAbs().maxCoeff());
  }
  return report;
}

}  // namespace gclone

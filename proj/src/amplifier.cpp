#include "amplifier.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>
#include <fmt/format.h>

#include "error.hpp"

namespace gclone {

namespace {

void check_gain(double gain) {
  if (!(gain > 1.0) || !std::isfinite(gain)) {
    throw ParameterError(fmt::format("amplifier gain {} must be finite and > 1", gain));
  }
}

// Appends w * (1-gamma)^(k+1) gamma^l C(l+k, k), l = 0..cutoff, onto out.
void accumulate_number_idler(std::size_t k, double gamma, double w, std::vector<double>& out) {
  double q = std::pow(1.0 - gamma, static_cast<double>(k + 1));
  for (std::size_t l = 0; l < out.size(); ++l) {
    out[l] += w * q;
    q *= gamma * static_cast<double>(l + k + 1) / static_cast<double>(l + 1);
  }
}

DiagonalState with_deficit_tail(std::vector<double> probs, double reference_mass = 1.0) {
  double sum = 0.0;
  for (double p : probs) sum += p;
  return DiagonalState(std::move(probs), std::max(0.0, reference_mass - sum));
}

}  // namespace

AmplifierSpec::AmplifierSpec(double gain, DiagonalState idler) : gain_(gain), idler_(std::move(idler)) {
  check_gain(gain);
}

double AmplifierSpec::tanh_ratio() const { return std::sqrt(gamma()); }

double AmplifierSpec::log_cosh() const { return 0.5 * std::log(gain_); }

double AmplifierSpec::squeezing() const { return std::acosh(std::sqrt(gain_)); }

ReductionParams ReductionParams::compute(ThermalParams s, double gain) {
  check_gain(gain);
  const double sv = s.s();
  ReductionParams r;
  r.s = sv;
  r.gain = gain;
  r.eta = (gain - 1.0) * (1.0 - sv) / (gain - 1.0 + sv);
  r.gamma_eff = (gain - 1.0 + sv) / gain;
  return r;
}

DiagonalState output_vacuum_input(const DiagonalState& idler, double gain, std::size_t cutoff) {
  check_gain(gain);
  const double gamma = (gain - 1.0) / gain;
  std::vector<double> out(cutoff + 1, 0.0);
  const auto tau = idler.probs();
  for (std::size_t k = 0; k < tau.size(); ++k) {
    if (tau[k] != 0.0) accumulate_number_idler(k, gamma, tau[k], out);
  }
  // Idler mass beyond its own cutoff is unaccounted for and goes to the tail.
  return with_deficit_tail(std::move(out));
}

double cdf_identity(std::size_t k, std::size_t m, double gamma) {
  if (!(gamma > 0.0 && gamma < 1.0)) throw ParameterError(fmt::format("gamma {} outside (0, 1)", gamma));
  const double n = static_cast<double>(k + m + 1);
  // term_r = (1-gamma)^r gamma^(k-r) C(n, r)
  double term = std::pow(gamma, static_cast<double>(k));
  double sum = 0.0;
  for (std::size_t r = 0; r <= k; ++r) {
    sum += term;
    term *= (1.0 - gamma) / gamma * (n - static_cast<double>(r)) / static_cast<double>(r + 1);
  }
  return 1.0 - std::pow(gamma, static_cast<double>(m + 1)) * sum;
}

DiagonalState loss_channel(const DiagonalState& tau, double eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) throw ParameterError(fmt::format("transmissivity {} outside [0, 1]", eta));
  const auto in = tau.probs();
  if (eta == 1.0) return tau;
  std::vector<double> out(in.size(), 0.0);
  if (eta == 0.0) {
    double sum = 0.0;
    for (double p : in) sum += p;
    out[0] = sum;
    return DiagonalState(std::move(out), tau.tail_mass());
  }
  const double odds = eta / (1.0 - eta);
  for (std::size_t k = 0; k < in.size(); ++k) {
    if (in[k] == 0.0) continue;
    // C(k,p) eta^p (1-eta)^(k-p), starting from p = 0.
    double b = std::pow(1.0 - eta, static_cast<double>(k));
    for (std::size_t p = 0; p <= k; ++p) {
      out[p] += in[k] * b;
      b *= odds * static_cast<double>(k - p) / static_cast<double>(p + 1);
    }
  }
  return DiagonalState(std::move(out), tau.tail_mass());
}

DiagonalState output_thermal_input(ThermalParams s, const AmplifierSpec& spec, std::size_t cutoff) {
  if (s.s() == 0.0) return output_vacuum_input(spec.idler(), spec.gain(), cutoff);
  const auto red = ReductionParams::compute(s, spec.gain());
  return output_vacuum_input(loss_channel(spec.idler(), red.eta), red.effective_gain(), cutoff);
}

DiagonalState two_mode_squeezer_oracle(const DiagonalState& input, const DiagonalState& idler, double gain,
                                       std::size_t cutoff) {
  check_gain(gain);
  if (cutoff > kOracleMaxCutoff) {
    throw ResourceError(fmt::format("oracle cutoff {} exceeds limit {} (two-mode dimension {})", cutoff,
                                    kOracleMaxCutoff, (cutoff + 1) * (cutoff + 1)));
  }
  const double r = std::acosh(std::sqrt(gain));
  // The truncated generator reflects amplitude at the boundary; evolving in a
  // larger space keeps that error well below the mass beyond `cutoff`.
  const std::size_t space = cutoff + cutoff / 2 + 8;
  const auto pin = input.probs();
  const auto pid = idler.probs();
  const std::size_t nin = std::min(pin.size(), cutoff + 1);
  const std::size_t nid = std::min(pid.size(), cutoff + 1);
  std::vector<double> out(space + 1, 0.0);

  // a^dag b^dag and a b conserve d = n_a - n_b, so the generator splits into
  // blocks spanned by |j, j-d>. Inside a block it is real, antisymmetric and
  // tridiagonal; conjugating by diag(i^idx) turns it into i*r*T with T real
  // symmetric, hence exp(K) = D^-1 Q exp(i r Lambda) Q^T D and the phases in D
  // drop out of |U|^2.
  const auto c = static_cast<std::ptrdiff_t>(space);
  for (std::ptrdiff_t d = -c; d <= c; ++d) {
    const std::ptrdiff_t j0 = std::max<std::ptrdiff_t>(0, d);
    const auto len = static_cast<Eigen::Index>(c + 1 - std::abs(d));

    bool needed = false;
    for (Eigen::Index i = 0; i < len && !needed; ++i) {
      const auto n = static_cast<std::size_t>(j0 + i);
      const auto k = static_cast<std::size_t>(j0 + i - d);
      needed = n < nin && k < nid && pin[n] * pid[k] != 0.0;
    }
    if (!needed) continue;

    Eigen::VectorXd diag = Eigen::VectorXd::Zero(len);
    Eigen::VectorXd sub(std::max<Eigen::Index>(len - 1, 0));
    for (Eigen::Index i = 0; i + 1 < len; ++i) {
      const double j = static_cast<double>(j0 + i);
      sub(i) = std::sqrt((j + 1.0) * (j - static_cast<double>(d) + 1.0));
    }
    Eigen::MatrixXd q;
    Eigen::VectorXd lambda;
    if (len == 1) {
      q = Eigen::MatrixXd::Identity(1, 1);
      lambda = Eigen::VectorXd::Zero(1);
    } else {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig;
      eig.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
      if (eig.info() != Eigen::Success) throw SolverError("tridiagonal eigensolver failed in oracle");
      q = eig.eigenvectors();
      lambda = eig.eigenvalues();
    }
    Eigen::VectorXcd phase(len);
    for (Eigen::Index e = 0; e < len; ++e) phase(e) = std::polar(1.0, r * lambda(e));

    const Eigen::MatrixXcd qc = q.cast<std::complex<double>>();
    for (Eigen::Index b = 0; b < len; ++b) {
      const auto n = static_cast<std::size_t>(j0 + b);
      const auto k = static_cast<std::size_t>(j0 + b - d);
      if (n >= nin || k >= nid) continue;
      const double w = pin[n] * pid[k];
      if (w == 0.0) continue;
      const Eigen::VectorXcd amp = qc * phase.cwiseProduct(qc.row(b).transpose());
      for (Eigen::Index a = 0; a < len; ++a) out[static_cast<std::size_t>(j0 + a)] += w * std::norm(amp(a));
    }
  }
  out.resize(cutoff + 1);
  double sum = 0.0;
  for (double p : out) sum += p;
  return DiagonalState(std::move(out), std::max(0.0, 1.0 - sum));
}

}  // namespace gclone

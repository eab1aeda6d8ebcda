#include "verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include <fmt/format.h>

#include "amplifier.hpp"
#include "error.hpp"
#include "gaussian.hpp"
#include "merit.hpp"

namespace gclone {

namespace {

constexpr std::array kOrderingS{0.0, 0.25, 0.5, 0.75, 0.9};
constexpr std::array kOrderingGain{1.5, 2.0, 4.0};

void record(SuiteResult& r, double deviation, bool ok) {
  ++r.checks;
  r.worst = std::max(r.worst, deviation);
  if (!ok) ++r.violations;
}

SuiteResult ordering_suite(const VerifyConfig& cfg) {
  SuiteResult r;
  r.name = "ordering";
  std::mt19937_64 rng(cfg.seed);
  constexpr std::size_t kCutoff = 200;
  for (std::size_t t = 0; t < cfg.trials; ++t) {
    const DiagonalState idler = random_idler(rng, 12);
    for (double s : kOrderingS) {
      for (double g : kOrderingGain) {
        const ThermalParams sp(s);
        const auto vac = output_thermal_input(sp, AmplifierSpec(g, number_state(0, 0)), kCutoff);
        const auto out = output_thermal_input(sp, AmplifierSpec(g, idler), kCutoff);
        double worst = 0.0;
        double cv = 0.0, co = 0.0;
        for (std::size_t m = 0; m <= kCutoff; ++m) {
          cv += vac.at(m);
          co += out.at(m);
          worst = std::max(worst, co - cv);
        }
        record(r, worst, stochastically_dominated(vac, out, cfg.tol));
      }
    }
  }
  r.detail = fmt::format("{} idlers x {} s x {} gains, tol {:g}", cfg.trials, kOrderingS.size(), kOrderingGain.size(),
                         cfg.tol);
  return r;
}

SuiteResult cdf_suite() {
  SuiteResult r;
  r.name = "cdf";
  constexpr std::size_t kMaxK = 10, kMaxM = 50;
  for (double g : {1.5, 2.0, 3.0}) {
    const double gamma = (g - 1.0) / g;
    for (std::size_t k = 0; k <= kMaxK; ++k) {
      const auto q = output_vacuum_input(number_state(k, k), g, kMaxM);
      double partial = 0.0;
      for (std::size_t m = 0; m <= kMaxM; ++m) {
        partial += q.at(m);
        const double dev = std::abs(partial - cdf_identity(k, m, gamma));
        record(r, dev, dev <= 1e-12);
      }
    }
  }
  r.detail = "k <= 10, m <= 50, G in {1.5, 2, 3}, tol 1e-12";
  return r;
}

SuiteResult oracle_suite() {
  SuiteResult r;
  r.name = "oracle";
  const std::array idlers{number_state(0, 3), number_state(1, 3), number_state(3, 3),
                          DiagonalState({0.4, 0.3, 0.0, 0.3}, 0.0)};
  for (double s : {0.0, 0.5}) {
    const std::size_t cutoff = s == 0.0 ? 40 : 60;
    const auto input = thermal_distribution(ThermalParams(s), cutoff);
    for (const auto& idler : idlers) {
      const auto oracle = two_mode_squeezer_oracle(input, idler, 2.0, cutoff);
      const auto closed = output_thermal_input(ThermalParams(s), AmplifierSpec(2.0, idler), cutoff);
      double dev = 0.0;
      for (std::size_t l = 0; l <= cutoff; ++l) dev = std::max(dev, std::abs(oracle.at(l) - closed.at(l)));
      record(r, dev, dev <= 1e-6);
    }
  }
  r.detail = "{vacuum, thermal 0.5} x {|0>, |1>, |3>, mixed}, G = 2, tol 1e-6";
  return r;
}

SuiteResult lp_suite() {
  SuiteResult r;
  r.name = "lp";
  for (double s : {0.0, 0.3, 0.6, 0.9}) {
    for (double g : {1.5, 2.0, 4.0}) {
      const ThermalParams sp(s);
      const std::size_t cutoff = default_cutoff((g - 1.0 + s) / g, 1e-11);
      const auto opt = optimize_idler(sp, g, 6, cutoff);
      const double dev = std::max(1.0 - opt.tau_star.at(0), std::abs(opt.delta_star - delta_amp(sp, g)));
      record(r, dev, opt.status == SolverStatus::kOptimal && opt.tau_star.at(0) >= 1.0 - 1e-7 && dev <= 1e-6);
    }
  }
  r.detail = "s in {0, 0.3, 0.6, 0.9} x G in {1.5, 2, 4}, idlers up to |6>";
  return r;
}

SuiteResult merit_suite() {
  SuiteResult r;
  r.name = "merit";
  double previous = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 100; ++i) {
    const ThermalParams s(0.99 * i / 99.0);
    const double closed = delta_clon(s);
    const Bounded numeric = delta_numeric(s);
    const double dev = std::abs(closed - numeric.value);
    record(r, dev, dev < 1e-9 && closed >= 0.5 - 1e-12 && closed <= previous + 1e-12);
    previous = closed;
  }
  const double classical = classical_deficiency(7.3);
  record(r, std::abs(classical - 0.5), std::abs(classical - 0.5) <= 1e-12);
  r.detail = "100 s values in [0, 0.99]: closed form vs summation, monotone, >= 1/2";
  return r;
}

SuiteResult symplectic_suite(const VerifyConfig& cfg) {
  SuiteResult r;
  r.name = "symplectic";
  for (std::size_t n = 1; n <= 8; ++n) {
    const auto f = fourier_map(n);
    const double orth = (f.matrix().transpose() * f.matrix() -
                         Eigen::MatrixXd::Identity(f.matrix().rows(), f.matrix().cols()))
                            .cwiseAbs()
                            .maxCoeff();
    const double dev = std::max(f.symplectic_residual(), orth);
    record(r, dev, dev <= 1e-10);
  }
  std::mt19937_64 rng(cfg.seed ^ 0x5eedULL);
  std::uniform_real_distribution<double> unit(-2.0, 2.0);
  std::uniform_real_distribution<double> sdist(0.0, 0.95);
  const std::array<std::pair<std::size_t, std::size_t>, 5> shapes{{{1, 1}, {1, 2}, {2, 3}, {1, 4}, {2, 5}}};
  for (const auto& [n, m] : shapes) {
    for (int t = 0; t < 10; ++t) {
      const std::complex<double> alpha(unit(rng), unit(rng));
      const ThermalParams s(sdist(rng));
      const auto out = clone_pipeline(n, m, alpha, s);
      const auto first = marginal(out, 0);
      double dev = 0.0;
      for (std::size_t k = 0; k < m; ++k) {
        const auto mk = marginal(out, k);
        dev = std::max(dev, (mk.cov() - first.cov()).cwiseAbs().maxCoeff());
        dev = std::max(dev, (mk.mean() - std::numbers::sqrt2 * Eigen::Vector2d(alpha.real(), alpha.imag())).norm());
      }
      const double nu_min = out.symplectic_eigenvalues().minCoeff();
      dev = std::max(dev, std::max(0.0, kVacuumVariance - nu_min));
      record(r, dev, dev <= 1e-10);
    }
  }
  r.detail = "Fourier maps n <= 8; pipeline symmetry, means and physicality on random inputs";
  return r;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"ordering", "cdf", "oracle", "lp", "merit", "symplectic"};
  return names;
}

std::vector<SuiteResult> run_verification(const VerifyConfig& config) {
  if (!(config.tol >= 0.0)) throw ParameterError(fmt::format("tolerance {} must be >= 0", config.tol));
  for (const auto& name : config.suites) {
    if (std::find(suite_names().begin(), suite_names().end(), name) == suite_names().end()) {
      throw ParameterError(fmt::format("unknown suite '{}'", name));
    }
  }
  const auto& selected = config.suites.empty() ? suite_names() : config.suites;
  std::vector<SuiteResult> results;
  for (const auto& name : selected) {
    SuiteResult r;
    if (name == "ordering") r = ordering_suite(config);
    else if (name == "cdf") r = cdf_suite();
    else if (name == "oracle") r = oracle_suite();
    else if (name == "lp") r = lp_suite();
    else if (name == "merit") r = merit_suite();
    else r = symplectic_suite(config);
    r.passed = r.violations == 0 && r.checks > 0;
    results.push_back(std::move(r));
  }
  return results;
}

nlohmann::json to_json(const VerifyConfig& config, const std::vector<SuiteResult>& results) {
  nlohmann::json suites = nlohmann::json::array();
  bool all = true;
  for (const auto& r : results) {
    all = all && r.passed;
    suites.push_back({{"name", r.name},
                      {"passed", r.passed},
                      {"checks", r.checks},
                      {"violations", r.violations},
                      {"worst", r.worst},
                      {"detail", r.detail}});
  }
  return {{"seed", config.seed}, {"trials", config.trials}, {"tol", config.tol}, {"passed", all}, {"suites", suites}};
}

DiagonalState random_idler(std::mt19937_64& rng, std::size_t max_photons) {
  std::uniform_int_distribution<std::size_t> photon(0, max_photons);
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> probs(max_photons + 1, 0.0);
  switch (std::uniform_int_distribution<int>(0, 2)(rng)) {
    case 0:
      probs[photon(rng)] = 1.0;
      break;
    case 1: {
      const double w = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
      probs[photon(rng)] += w;
      probs[photon(rng)] += 1.0 - w;
      break;
    }
    default: {
      double total = 0.0;
      for (double& p : probs) total += p = expo(rng);
      for (double& p : probs) p /= total;
    }
  }
  double sum = 0.0;
  for (double p : probs) sum += p;
  for (double& p : probs) p /= sum;
  return DiagonalState(std::move(probs), 0.0);
}

}  // namespace gclone

#include "merit.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include <fmt/format.h>

#include "amplifier.hpp"
#include "error.hpp"

namespace gclone {

namespace {

void check_gain(double gain) {
  if (!(gain > 1.0) || !std::isfinite(gain)) throw ParameterError(fmt::format("gain {} must be finite and > 1", gain));
}

double amplified_ratio(double s, double gain) { return (gain - 1.0 + s) / gain; }

// Sign of p_m - q_m evaluated in log space: ln G + m ln(s/gamma).
bool target_dominates_at(double s, double gamma, double gain, int m) {
  if (s == 0.0) return m == 0;
  return std::log(gain) + m * (std::log(s) - std::log(gamma)) >= 0.0;
}

}  // namespace

int crossing_index(ThermalParams params, double gain) {
  check_gain(gain);
  const double s = params.s();
  if (s == 0.0) return 0;
  const double gamma = amplified_ratio(s, gain);
  int m0 = static_cast<int>(std::floor(std::log(gain) / (std::log(gamma) - std::log(s))));
  // The ratio sits next to an integer at jump points; settle the index by the
  // sign change it is defined by.
  while (m0 > 0 && !target_dominates_at(s, gamma, gain, m0)) --m0;
  while (target_dominates_at(s, gamma, gain, m0 + 1)) ++m0;
  return m0;
}

double delta_amp(ThermalParams params, double gain) {
  const int m0 = crossing_index(params, gain);
  const double gamma = amplified_ratio(params.s(), gain);
  return 2.0 * (std::pow(gamma, m0 + 1) - std::pow(params.s(), m0 + 1));
}

double delta_clon(ThermalParams s) { return delta_amp(s, 2.0); }

Bounded delta_numeric(ThermalParams s, double gain) {
  check_gain(gain);
  const double gamma = amplified_ratio(s.s(), gain);
  const std::size_t cutoff = default_cutoff(gamma);
  return l1_distance(thermal_distribution(s, cutoff), thermal_distribution(ThermalParams(gamma), cutoff));
}

WignerVariances wigner_variances(ThermalParams params) {
  const double s = params.s();
  const double input = (1.0 + s) / (2.0 * (1.0 - s));
  // (3+s)/(2(1-s)) written as 2 V_s + 1/2 so the identity holds bit for bit.
  return {input, 2.0 * input + 0.5};
}

double gaussian_l1(double v1, double v2) {
  if (!(v1 > 0.0) || !(v2 > 0.0) || !std::isfinite(v1) || !std::isfinite(v2)) {
    throw ParameterError(fmt::format("variances ({}, {}) must be positive and finite", v1, v2));
  }
  if (v1 == v2) return 0.0;
  const double rho = std::max(v1, v2) / std::min(v1, v2);
  // rho^(-1/(rho-1)) - rho^(-rho/(rho-1)) = rho^(-1/(rho-1)) (1 - 1/rho); the
  // log form stays accurate as rho -> 1.
  const double a = std::exp(-std::log(rho) / (rho - 1.0));
  return 2.0 * a * (1.0 - 1.0 / rho);
}

double classical_deficiency(double v) { return gaussian_l1(v, 2.0 * v); }

MeritReport merit_report(ThermalParams s) {
  MeritReport r;
  r.s = s.s();
  r.m0 = crossing_index(s);
  r.delta_clon = delta_clon(s);
  const Bounded numeric = delta_numeric(s);
  r.delta_numeric = numeric.value;
  r.delta_uncertainty = numeric.uncertainty;
  const auto v = wigner_variances(s);
  r.wigner_l1 = gaussian_l1(v.input, v.amplified);
  r.classical = classical_deficiency();
  return r;
}

std::vector<MeritReport> merit_sweep(std::span<const double> s_grid, unsigned jobs) {
  // Validate up front so a bad grid point fails before any work is scheduled.
  std::vector<ThermalParams> params;
  params.reserve(s_grid.size());
  for (double s : s_grid) params.emplace_back(s);

  std::vector<MeritReport> rows(params.size());
  const unsigned workers = std::clamp<unsigned>(jobs, 1, static_cast<unsigned>(std::max<std::size_t>(1, rows.size())));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < rows.size(); i = next++) rows[i] = merit_report(params[i]);
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  return rows;
}

IdlerOptimum optimize_idler(ThermalParams s, double gain, std::size_t max_idler, std::size_t cutoff) {
  check_gain(gain);
  if (max_idler < 1) throw ParameterError("max idler photon number must be >= 1");

  const auto target = thermal_distribution(s, cutoff);
  std::vector<DiagonalState> outputs;
  outputs.reserve(max_idler + 1);
  for (std::size_t k = 0; k <= max_idler; ++k) {
    outputs.push_back(output_thermal_input(s, AmplifierSpec(gain, number_state(k, max_idler)), cutoff));
  }

  // Variables: tau_0..tau_K, then (v+_l, v-_l) for l = 0..cutoff.
  // Row l:        sum_k tau_k q^(k)_l - v+_l + v-_l = p_l
  // Last row:     sum_k tau_k = 1
  // Objective:    sum_l v+_l + v-_l
  const auto nk = static_cast<Eigen::Index>(max_idler + 1);
  const auto nl = static_cast<Eigen::Index>(cutoff + 1);
  StandardFormLp lp;
  lp.a = Eigen::MatrixXd::Zero(nl + 1, nk + 2 * nl);
  lp.b = Eigen::VectorXd::Zero(nl + 1);
  lp.c = Eigen::VectorXd::Zero(nk + 2 * nl);
  for (Eigen::Index l = 0; l < nl; ++l) {
    for (Eigen::Index k = 0; k < nk; ++k) lp.a(l, k) = outputs[static_cast<std::size_t>(k)].at(static_cast<std::size_t>(l));
    lp.a(l, nk + 2 * l) = -1.0;
    lp.a(l, nk + 2 * l + 1) = 1.0;
    lp.b(l) = target.at(static_cast<std::size_t>(l));
    lp.c(nk + 2 * l) = 1.0;
    lp.c(nk + 2 * l + 1) = 1.0;
  }
  lp.a.row(nl).head(nk).setOnes();
  lp.b(nl) = 1.0;

  const LpSolution sol = solve_lp(lp);
  if (sol.status == SolverStatus::kFailed) {
    throw SolverError(fmt::format("idler LP failed (s={}, G={}, K={}, cutoff={}): {}", s.s(), gain, max_idler,
                                  cutoff, sol.message));
  }

  std::vector<double> tau(static_cast<std::size_t>(nk));
  double total = 0.0;
  for (Eigen::Index k = 0; k < nk; ++k) total += tau[static_cast<std::size_t>(k)] = sol.x(k);
  // Renormalize away pivoting round-off; the simplex constraint holds to ~1e-15.
  for (double& t : tau) t /= total;

  IdlerOptimum opt{.tau_star = DiagonalState(std::move(tau), 0.0), .message = {}};
  opt.delta_star = sol.objective;
  opt.status = sol.status;
  opt.gap = sol.objective - sol.dual_objective;
  opt.dual_infeasibility = sol.dual_infeasibility;
  opt.iterations = sol.iterations;
  opt.message = sol.message;
  if (opt.status == SolverStatus::kOptimal && (opt.dual_infeasibility > 1e-9 || std::abs(opt.gap) > 1e-9)) {
    opt.status = SolverStatus::kFeasible;
    opt.message = fmt::format("optimality not certified: gap {:.3e}, dual infeasibility {:.3e}", opt.gap,
                              opt.dual_infeasibility);
  }
  return opt;
}

}  // namespace gclone

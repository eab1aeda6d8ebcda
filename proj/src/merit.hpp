#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "fock_dist.hpp"
#include "simplex.hpp"

namespace gclone {

/// One row of the figure-of-merit dataset.
struct MeritReport {
  double s = 0.0;
  int m0 = 0;
  double delta_clon = 0.0;
  /// l1(geom(s), geom((1+s)/2)) by direct summation.
  double delta_numeric = 0.0;
  /// Truncation bound on delta_numeric.
  double delta_uncertainty = 0.0;
  /// l1 distance between the Wigner Gaussians of variances V_s and V_s~.
  double wigner_l1 = 0.0;
  double classical = 0.5;
};

/// Last photon number at which the thermal law (1-s)s^l still dominates the
/// optimally amplified law (1-gamma)gamma^l, gamma = (G-1+s)/G. For G = 2 this is
/// floor(ln 2 / (ln(1+s) - ln(2s))); s = 0 gives 0.
int crossing_index(ThermalParams s, double gain = 2.0);

/// Optimal amplification deficiency 2(gamma^(m0+1) - s^(m0+1)).
double delta_amp(ThermalParams s, double gain);

/// Optimal 1 -> 2 cloning deficiency, equal to delta_amp at G = 2.
double delta_clon(ThermalParams s);

/// delta_amp recomputed as a truncated l1 sum with a tail bound.
Bounded delta_numeric(ThermalParams s, double gain = 2.0);

MeritReport merit_report(ThermalParams s);

/// One report per grid point, in grid order, evaluated on `jobs` worker threads.
std::vector<MeritReport> merit_sweep(std::span<const double> s_grid, unsigned jobs = 1);

struct WignerVariances {
  double input;      ///< V_s = (1+s) / (2(1-s))
  double amplified;  ///< V_s~ = (3+s) / (2(1-s)) = 2 V_s + 1/2
};

WignerVariances wigner_variances(ThermalParams s);

/// l1 distance between centred isotropic 2-D Gaussians with per-quadrature
/// variances v1 and v2. With rho = max/min:
/// 2 (rho^(-1/(rho-1)) - rho^(-rho/(rho-1))).
double gaussian_l1(double v1, double v2);

/// Deficiency of the classical amplifier x -> sqrt(2) x, i.e. gaussian_l1(v, 2v).
/// Independent of v.
double classical_deficiency(double v = 1.0);

struct IdlerOptimum {
  DiagonalState tau_star;
  double delta_star = 0.0;
  SolverStatus status = SolverStatus::kFailed;
  /// Primal minus dual objective of the LP; the optimum lies in [delta_star - gap, delta_star].
  double gap = 0.0;
  double dual_infeasibility = 0.0;
  std::size_t iterations = 0;
  std::string message;
};

/// Minimizes || sum_k tau_k q^(k) - p ||_1 over idlers supported on |0>..|max_idler>,
/// where p is the thermal law and q^(k) the thermal-input output for idler |k>,
/// both truncated at `cutoff`. Solved as an LP with slack pairs per photon number.
/// Throws SolverError when the LP cannot be solved.
IdlerOptimum optimize_idler(ThermalParams s, double gain, std::size_t max_idler, std::size_t cutoff);

}  // namespace gclone

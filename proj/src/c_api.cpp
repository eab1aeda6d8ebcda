#include "gclone.h"

#include <cstring>
#include <exception>
#include <memory>
#include <new>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "amplifier.hpp"
#include "error.hpp"
#include "fock_dist.hpp"
#include "gaussian.hpp"
#include "merit.hpp"
#include "serialize.hpp"
#include "verify.hpp"

struct gclone_diag {
  gclone::DiagonalState state;
};

struct gclone_gaussian {
  gclone::GaussianState state;
};

struct gclone_optimum {
  gclone::IdlerOptimum opt;
  gclone_diag tau;
};

namespace {

thread_local std::string last_error;

template <typename Fn>
gclone_status guarded(Fn&& fn) {
  try {
    std::forward<Fn>(fn)();
    last_error.clear();
    return GCLONE_OK;
  } catch (const gclone::ParameterError& e) {
    last_error = e.what();
    return GCLONE_ERR_PARAMETER;
  } catch (const gclone::IndexError& e) {
    last_error = e.what();
    return GCLONE_ERR_INDEX;
  } catch (const gclone::ResourceError& e) {
    last_error = e.what();
    return GCLONE_ERR_RESOURCE;
  } catch (const gclone::SolverError& e) {
    last_error = e.what();
    return GCLONE_ERR_SOLVER;
  } catch (const gclone::UnsupportedStateError& e) {
    last_error = e.what();
    return GCLONE_ERR_UNSUPPORTED;
  } catch (const gclone::IoError& e) {
    last_error = e.what();
    return GCLONE_ERR_IO;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return GCLONE_ERR_RESOURCE;
  } catch (const std::exception& e) {
    last_error = e.what();
    return GCLONE_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown error";
    return GCLONE_ERR_INTERNAL;
  }
}

void require(const void* p, const char* what) {
  if (p == nullptr) throw gclone::ParameterError(std::string(what) + " must not be null");
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

gclone_diag* wrap(gclone::DiagonalState s) { return new gclone_diag{std::move(s)}; }
gclone_gaussian* wrap(gclone::GaussianState s) { return new gclone_gaussian{std::move(s)}; }

gclone::MeritReport from_row(const gclone_merit_row& r) {
  return {r.s, r.m0, r.delta_clon, r.delta_numeric, r.delta_uncertainty, r.wigner_l1, r.classical};
}

gclone_solver_status to_c(gclone::SolverStatus s) {
  switch (s) {
    case gclone::SolverStatus::kOptimal: return GCLONE_SOLVER_OPTIMAL;
    case gclone::SolverStatus::kFeasible: return GCLONE_SOLVER_FEASIBLE;
    case gclone::SolverStatus::kFailed: break;
  }
  return GCLONE_SOLVER_FAILED;
}

}  // namespace

extern "C" {

const char* gclone_version(void) { return "0.1.0"; }

const char* gclone_last_error(void) { return last_error.c_str(); }

const char* gclone_status_name(gclone_status status) {
  switch (status) {
    case GCLONE_OK: return "ok";
    case GCLONE_ERR_PARAMETER: return "parameter error";
    case GCLONE_ERR_INDEX: return "index error";
    case GCLONE_ERR_RESOURCE: return "resource error";
    case GCLONE_ERR_SOLVER: return "solver error";
    case GCLONE_ERR_UNSUPPORTED: return "unsupported state";
    case GCLONE_ERR_IO: return "I/O error";
    case GCLONE_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void gclone_string_free(char* str) { delete[] str; }

gclone_status gclone_diag_thermal(double s, size_t cutoff, gclone_diag** out) {
  return guarded([&] {
    require(out, "out");
    *out = wrap(gclone::thermal_distribution(gclone::ThermalParams(s), cutoff));
  });
}

gclone_status gclone_diag_number(size_t k, size_t cutoff, gclone_diag** out) {
  return guarded([&] {
    require(out, "out");
    *out = wrap(gclone::number_state(k, cutoff));
  });
}

gclone_status gclone_diag_from_probs(const double* probs, size_t n, double tail_mass, gclone_diag** out) {
  return guarded([&] {
    require(out, "out");
    require(probs, "probs");
    std::vector<double> v(probs, probs + n);
    *out = tail_mass < 0.0 ? wrap(gclone::DiagonalState(std::move(v)))
                           : wrap(gclone::DiagonalState(std::move(v), tail_mass));
  });
}

gclone_status gclone_diag_from_json(const char* json, gclone_diag** out) {
  return guarded([&] {
    require(out, "out");
    require(json, "json");
    const auto j = nlohmann::json::parse(json, nullptr, false);
    if (j.is_discarded()) throw gclone::ParameterError("diagonal state: invalid JSON text");
    *out = wrap(gclone::diagonal_state_from_json(j));
  });
}

void gclone_diag_free(gclone_diag* state) { delete state; }

size_t gclone_diag_size(const gclone_diag* state) { return state ? state->state.size() : 0; }

const double* gclone_diag_probs(const gclone_diag* state) { return state ? state->state.probs().data() : nullptr; }

double gclone_diag_tail_mass(const gclone_diag* state) { return state ? state->state.tail_mass() : 0.0; }

gclone_status gclone_diag_to_json(const gclone_diag* state, char** json) {
  return guarded([&] {
    require(state, "state");
    require(json, "json");
    *json = dup_string(gclone::to_json(state->state).dump());
  });
}

size_t gclone_default_cutoff(double ratio_max, double tail) {
  size_t cutoff = 0;
  const auto st = guarded([&] { cutoff = gclone::default_cutoff(ratio_max, tail); });
  return st == GCLONE_OK ? cutoff : 0;
}

gclone_status gclone_l1_distance(const gclone_diag* p, const gclone_diag* q, double* value, double* uncertainty) {
  return guarded([&] {
    require(p, "p");
    require(q, "q");
    require(value, "value");
    const auto d = gclone::l1_distance(p->state, q->state);
    *value = d.value;
    if (uncertainty) *uncertainty = d.uncertainty;
  });
}

gclone_status gclone_cdf(const gclone_diag* p, size_t m, double* out) {
  return guarded([&] {
    require(p, "p");
    require(out, "out");
    *out = gclone::cdf(p->state, m);
  });
}

gclone_status gclone_stochastically_dominated(const gclone_diag* p, const gclone_diag* q, double tol, int* out) {
  return guarded([&] {
    require(p, "p");
    require(q, "q");
    require(out, "out");
    *out = gclone::stochastically_dominated(p->state, q->state, tol) ? 1 : 0;
  });
}

gclone_status gclone_output_vacuum_input(const gclone_diag* idler, double gain, size_t cutoff, gclone_diag** out) {
  return guarded([&] {
    require(idler, "idler");
    require(out, "out");
    *out = wrap(gclone::output_vacuum_input(idler->state, gain, cutoff));
  });
}

gclone_status gclone_output_thermal_input(double s, const gclone_diag* idler, double gain, size_t cutoff,
                                          gclone_diag** out) {
  return guarded([&] {
    require(idler, "idler");
    require(out, "out");
    *out = wrap(gclone::output_thermal_input(gclone::ThermalParams(s), gclone::AmplifierSpec(gain, idler->state),
                                             cutoff));
  });
}

gclone_status gclone_loss_channel(const gclone_diag* tau, double eta, gclone_diag** out) {
  return guarded([&] {
    require(tau, "tau");
    require(out, "out");
    *out = wrap(gclone::loss_channel(tau->state, eta));
  });
}

gclone_status gclone_cdf_identity(size_t k, size_t m, double gamma, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = gclone::cdf_identity(k, m, gamma);
  });
}

gclone_status gclone_two_mode_squeezer_oracle(const gclone_diag* input, const gclone_diag* idler, double gain,
                                              size_t cutoff, gclone_diag** out) {
  return guarded([&] {
    require(input, "input");
    require(idler, "idler");
    require(out, "out");
    *out = wrap(gclone::two_mode_squeezer_oracle(input->state, idler->state, gain, cutoff));
  });
}

gclone_status gclone_crossing_index(double s, double gain, int* out) {
  return guarded([&] {
    require(out, "out");
    *out = gclone::crossing_index(gclone::ThermalParams(s), gain);
  });
}

gclone_status gclone_delta_clon(double s, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = gclone::delta_clon(gclone::ThermalParams(s));
  });
}

gclone_status gclone_delta_amp(double s, double gain, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = gclone::delta_amp(gclone::ThermalParams(s), gain);
  });
}

gclone_status gclone_wigner_variances(double s, double* v_input, double* v_amplified) {
  return guarded([&] {
    require(v_input, "v_input");
    require(v_amplified, "v_amplified");
    const auto v = gclone::wigner_variances(gclone::ThermalParams(s));
    *v_input = v.input;
    *v_amplified = v.amplified;
  });
}

gclone_status gclone_gaussian_l1(double v1, double v2, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = gclone::gaussian_l1(v1, v2);
  });
}

gclone_status gclone_classical_deficiency(double v, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = gclone::classical_deficiency(v);
  });
}

gclone_status gclone_merit_sweep(const double* s_grid, size_t n, unsigned jobs, gclone_merit_row* rows) {
  return guarded([&] {
    if (n == 0) return;
    require(s_grid, "s_grid");
    require(rows, "rows");
    const auto reports = gclone::merit_sweep(std::span<const double>(s_grid, n), jobs);
    for (size_t i = 0; i < n; ++i) {
      const auto& r = reports[i];
      rows[i] = {r.s, r.m0, r.delta_clon, r.delta_numeric, r.delta_uncertainty, r.wigner_l1, r.classical};
    }
  });
}

gclone_status gclone_merit_format(const gclone_merit_row* rows, size_t n, gclone_format format, char** text) {
  return guarded([&] {
    require(text, "text");
    if (n > 0) require(rows, "rows");
    std::vector<gclone::MeritReport> reports;
    reports.reserve(n);
    for (size_t i = 0; i < n; ++i) reports.push_back(from_row(rows[i]));
    switch (format) {
      case GCLONE_FORMAT_CSV: *text = dup_string(gclone::merit_csv(reports)); break;
      case GCLONE_FORMAT_JSON: *text = dup_string(gclone::merit_json(reports)); break;
      case GCLONE_FORMAT_SVG: *text = dup_string(gclone::merit_svg(reports)); break;
      default: throw gclone::ParameterError("unknown output format");
    }
  });
}

gclone_status gclone_optimize_idler(double s, double gain, size_t max_idler, size_t cutoff, gclone_optimum** out) {
  return guarded([&] {
    require(out, "out");
    auto opt = gclone::optimize_idler(gclone::ThermalParams(s), gain, max_idler, cutoff);
    auto tau = opt.tau_star;
    *out = new gclone_optimum{std::move(opt), gclone_diag{std::move(tau)}};
  });
}

void gclone_optimum_free(gclone_optimum* opt) { delete opt; }

const gclone_diag* gclone_optimum_tau(const gclone_optimum* opt) { return opt ? &opt->tau : nullptr; }

double gclone_optimum_delta(const gclone_optimum* opt) { return opt ? opt->opt.delta_star : 0.0; }

double gclone_optimum_gap(const gclone_optimum* opt) { return opt ? opt->opt.gap : 0.0; }

gclone_solver_status gclone_optimum_status(const gclone_optimum* opt) {
  return opt ? to_c(opt->opt.status) : GCLONE_SOLVER_FAILED;
}

gclone_status gclone_optimum_to_json(const gclone_optimum* opt, char** json) {
  return guarded([&] {
    require(opt, "opt");
    require(json, "json");
    *json = dup_string(gclone::to_json(opt->opt).dump());
  });
}

gclone_status gclone_gaussian_displaced_thermal(double alpha_re, double alpha_im, double s, gclone_gaussian** out) {
  return guarded([&] {
    require(out, "out");
    *out = wrap(gclone::displaced_thermal({alpha_re, alpha_im}, gclone::ThermalParams(s)));
  });
}

gclone_status gclone_clone_pipeline(size_t n, size_t m, double alpha_re, double alpha_im, double s,
                                    gclone_gaussian** out) {
  return guarded([&] {
    require(out, "out");
    *out = wrap(gclone::clone_pipeline(n, m, {alpha_re, alpha_im}, gclone::ThermalParams(s)));
  });
}

gclone_status gclone_clone_pipeline_amplified(size_t n, size_t m, double alpha_re, double alpha_im, double s,
                                              gclone_gaussian** out) {
  return guarded([&] {
    require(out, "out");
    *out = wrap(gclone::clone_pipeline_stages(n, m, {alpha_re, alpha_im}, gclone::ThermalParams(s)).amplified);
  });
}

gclone_status gclone_gaussian_from_json(const char* json, gclone_gaussian** out) {
  return guarded([&] {
    require(out, "out");
    require(json, "json");
    const auto j = nlohmann::json::parse(json, nullptr, false);
    if (j.is_discarded()) throw gclone::ParameterError("Gaussian state: invalid JSON text");
    *out = wrap(gclone::gaussian_state_from_json(j));
  });
}

void gclone_gaussian_free(gclone_gaussian* state) { delete state; }

size_t gclone_gaussian_modes(const gclone_gaussian* state) { return state ? state->state.modes() : 0; }

const double* gclone_gaussian_mean(const gclone_gaussian* state) {
  return state ? state->state.mean().data() : nullptr;
}

const double* gclone_gaussian_cov(const gclone_gaussian* state) { return state ? state->state.cov().data() : nullptr; }

gclone_status gclone_gaussian_marginal(const gclone_gaussian* state, size_t mode, gclone_gaussian** out) {
  return guarded([&] {
    require(state, "state");
    require(out, "out");
    *out = wrap(gclone::marginal(state->state, mode));
  });
}

gclone_status gclone_gaussian_min_symplectic_eigenvalue(const gclone_gaussian* state, double* out) {
  return guarded([&] {
    require(state, "state");
    require(out, "out");
    *out = state->state.symplectic_eigenvalues().minCoeff();
  });
}

gclone_status gclone_gaussian_thermal_fit(const gclone_gaussian* state, double* s_eff, double* alpha_re,
                                          double* alpha_im) {
  return guarded([&] {
    require(state, "state");
    require(s_eff, "s_eff");
    const auto fit = gclone::williamson_thermal_parameter(state->state);
    *s_eff = fit.s_eff;
    if (alpha_re) *alpha_re = fit.alpha_eff.real();
    if (alpha_im) *alpha_im = fit.alpha_eff.imag();
  });
}

gclone_status gclone_gaussian_to_json(const gclone_gaussian* state, char** json) {
  return guarded([&] {
    require(state, "state");
    require(json, "json");
    *json = dup_string(gclone::to_json(state->state).dump());
  });
}

gclone_status gclone_verify(const char* suites, uint64_t seed, size_t trials, double tol, char** report_json,
                            int* all_passed) {
  return guarded([&] {
    require(report_json, "report_json");
    require(all_passed, "all_passed");
    gclone::VerifyConfig cfg;
    cfg.seed = seed;
    cfg.trials = trials;
    cfg.tol = tol;
    if (suites != nullptr) {
      std::stringstream ss(suites);
      std::string name;
      while (std::getline(ss, name, ',')) {
        if (!name.empty()) cfg.suites.push_back(name);
      }
    }
    const auto results = gclone::run_verification(cfg);
    const auto report = gclone::to_json(cfg, results);
    *all_passed = report.at("passed").get<bool>() ? 1 : 0;
    *report_json = dup_string(report.dump(2));
  });
}

}  // extern "C"

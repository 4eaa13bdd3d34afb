#include "fracsub.h"

#include <cstring>
#include <string>

#include "fracsub/coefficient.hpp"
#include "fracsub/config.hpp"
#include "fracsub/csv.hpp"
#include "fracsub/dirichlet.hpp"
#include "fracsub/riesz.hpp"
#include "fracsub/scenario.hpp"
#include "fracsub/spectral.hpp"
#include "fracsub/sublinear.hpp"

using fracsub::Error;
using fracsub::ErrorClass;

struct fracsub_spec {
  fracsub::ProblemSpec spec;
};

struct fracsub_field {
  fracsub::Field field;
};

namespace {

thread_local std::string g_last_error;

fracsub_status status_of(ErrorClass c) {
  switch (c) {
    case ErrorClass::config: return FRACSUB_ERR_CONFIG;
    case ErrorClass::assumption: return FRACSUB_ERR_ASSUMPTION;
    case ErrorClass::non_convergence: return FRACSUB_ERR_NON_CONVERGENCE;
    case ErrorClass::check_failure: return FRACSUB_ERR_CHECK_FAILED;
    case ErrorClass::invalid: return FRACSUB_ERR_INVALID;
    case ErrorClass::io: return FRACSUB_ERR_IO;
  }
  return FRACSUB_ERR_INVALID;
}

template <typename F>
fracsub_status guarded(F&& fn) {
  try {
    fn();
    g_last_error.clear();
    return FRACSUB_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return status_of(e.cls());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return FRACSUB_ERR_INVALID;
  } catch (...) {
    g_last_error = "unknown failure";
    return FRACSUB_ERR_INVALID;
  }
}

fracsub_status need(bool ok, const char* msg) {
  if (ok) return FRACSUB_OK;
  g_last_error = msg;
  return FRACSUB_ERR_INVALID;
}

double pick_sigma(const fracsub_spec* spec, double sigma) {
  return sigma > 0.0 ? sigma : spec->spec.sigma;
}

}  // namespace

extern "C" {

const char* fracsub_last_error(void) { return g_last_error.c_str(); }

const char* fracsub_version(void) { return "fracsub 1.0.0"; }

fracsub_spec* fracsub_spec_create(void) { return new fracsub_spec{}; }

void fracsub_spec_destroy(fracsub_spec* spec) { delete spec; }

fracsub_status fracsub_spec_set(fracsub_spec* spec, const char* key, const char* value) {
  if (fracsub_status st = need(spec && key && value, "null argument")) return st;
  return guarded([&] {
    fracsub::ProblemSpec& s = spec->spec;
    const std::string k(key), v(value);
    if (k == "N") s.N = static_cast<int>(std::stod(v));
    else if (k == "sigma") s.sigma = std::stod(v);
    else if (k == "alpha") s.alpha = std::stod(v);
    else if (k == "beta") s.beta = std::stod(v);
    else if (k == "rho_family") s.rho_family = fracsub::parse_rho_family(v);
    else if (k == "rho_table") s.rho_table = v;
    else if (k == "L") s.L = std::stod(v);
    else if (k == "M") s.M = static_cast<int>(std::stod(v));
    else if (k == "tol_fixed_point") s.tol_fixed_point = std::stod(v);
    else if (k == "max_iter") s.max_iter = static_cast<int>(std::stod(v));
    else if (k == "delta_over_h") s.delta_over_h = std::stod(v);
    else if (k == "tail_radius") s.tail_radius = std::stod(v);
    else if (k == "y_min_over_h") s.y_min_over_h = std::stod(v);
    else if (k == "y_grade") s.y_grade = std::stod(v);
    else if (k == "y_height_over_L") s.y_height_over_L = std::stod(v);
    else if (k == "rho_floor") s.rho_floor = std::stod(v);
    else if (k == "pme_t_end") s.pme_t_end = std::stod(v);
    else fracsub::fail(ErrorClass::config, "unknown key '" + k + "'");
  });
}

fracsub_status fracsub_spec_validate(const fracsub_spec* spec) {
  if (fracsub_status st = need(spec != nullptr, "null spec")) return st;
  return guarded([&] { spec->spec.validate(); });
}

fracsub_status fracsub_coefficient(const fracsub_spec* spec, fracsub_field** out) {
  if (fracsub_status st = need(spec && out, "null argument")) return st;
  return guarded([&] { *out = new fracsub_field{fracsub::make_coefficient(spec->spec)}; });
}

fracsub_status fracsub_field_from_csv(const fracsub_spec* spec, const char* path,
                                      fracsub_field** out) {
  if (fracsub_status st = need(spec && path && out, "null argument")) return st;
  return guarded([&] {
    *out = new fracsub_field{fracsub::coefficient_from_table(spec->spec.grid(), path)};
  });
}

void fracsub_field_destroy(fracsub_field* f) { delete f; }

fracsub_status fracsub_field_dump_csv(const fracsub_field* f, const char* path) {
  if (fracsub_status st = need(f && path, "null argument")) return st;
  return guarded([&] { fracsub::field_dump_csv(f->field, path); });
}

fracsub_status fracsub_field_size(const fracsub_field* f, int64_t* out) {
  if (fracsub_status st = need(f && out, "null argument")) return st;
  *out = static_cast<int64_t>(f->field.size());
  return FRACSUB_OK;
}

fracsub_status fracsub_field_values(const fracsub_field* f, double* buffer, int64_t buffer_len) {
  if (fracsub_status st = need(f && buffer, "null argument")) return st;
  if (fracsub_status st =
          need(buffer_len >= static_cast<int64_t>(f->field.size()), "buffer too small"))
    return st;
  std::memcpy(buffer, f->field.v.data(), sizeof(double) * f->field.size());
  return FRACSUB_OK;
}

fracsub_status fracsub_field_sup_norm(const fracsub_field* f, double* out) {
  if (fracsub_status st = need(f && out, "null argument")) return st;
  *out = f->field.sup_norm();
  return FRACSUB_OK;
}

fracsub_status fracsub_apply_spectral(const fracsub_spec* spec, const fracsub_field* f,
                                      double sigma, fracsub_field** out) {
  if (fracsub_status st = need(spec && f && out, "null argument")) return st;
  return guarded([&] {
    *out = new fracsub_field{fracsub::apply_spectral(f->field, pick_sigma(spec, sigma))};
  });
}

fracsub_status fracsub_riesz_convolve(const fracsub_spec* spec, const fracsub_field* rho,
                                      double sigma, fracsub_field** out) {
  if (fracsub_status st = need(spec && rho && out, "null argument")) return st;
  return guarded([&] {
    *out = new fracsub_field{fracsub::riesz_convolve(rho->field, pick_sigma(spec, sigma))};
  });
}

fracsub_status fracsub_dirichlet_solve(const fracsub_spec* spec, const fracsub_field* rho,
                                       double R, fracsub_field** out) {
  if (fracsub_status st = need(spec && rho && out, "null argument")) return st;
  return guarded([&] {
    *out = new fracsub_field{fracsub::dirichlet_solve(rho->field, R, spec->spec.sigma)};
  });
}

fracsub_status fracsub_solve_ball(const fracsub_spec* spec, const fracsub_field* rho, double R,
                                  fracsub_field** out, int* iterations_out) {
  if (fracsub_status st = need(spec && rho && out, "null argument")) return st;
  return guarded([&] {
    auto [u, rep] = fracsub::solve_ball(rho->field, R, spec->spec);
    if (iterations_out) *iterations_out = rep.iterations;
    *out = new fracsub_field{std::move(u)};
  });
}

static fracsub_status run_or_emit(const char* config_path, const char* out_dir, int threads,
                                  int* exit_class, bool emit) {
  if (fracsub_status st = need(config_path && out_dir, "null argument")) return st;
  if (fracsub_status st = need(threads >= 1, "threads must be >= 1")) return st;
  fracsub::RunResult result;
  const fracsub_status st = guarded([&] {
    const fracsub::Scenario sc = fracsub::parse_config(config_path);
    result = emit ? fracsub::emit_plotdata(sc, out_dir) : fracsub::run_scenario(sc, out_dir);
  });
  if (st != FRACSUB_OK) {
    if (exit_class) *exit_class = (st == FRACSUB_ERR_INVALID || st == FRACSUB_ERR_IO)
                                      ? 1
                                      : static_cast<int>(st);
    return st;
  }
  if (exit_class) *exit_class = result.exit_code;
  if (result.exit_code != 0) g_last_error = result.error;
  switch (result.exit_code) {
    case 0: return FRACSUB_OK;
    case 1: return FRACSUB_ERR_CONFIG;
    case 2: return FRACSUB_ERR_ASSUMPTION;
    case 3: return FRACSUB_ERR_NON_CONVERGENCE;
    default: return FRACSUB_ERR_CHECK_FAILED;
  }
}

fracsub_status fracsub_run(const char* config_path, const char* out_dir, int threads,
                           int* exit_class) {
  return run_or_emit(config_path, out_dir, threads, exit_class, false);
}

fracsub_status fracsub_emit(const char* config_path, const char* out_dir, int threads,
                            int* exit_class) {
  return run_or_emit(config_path, out_dir, threads, exit_class, true);
}

}  // extern "C"

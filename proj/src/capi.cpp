#include "ch6/ch6.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <new>
#include <sstream>
#include <string>
#include <vector>

#include "common.hpp"
#include "config.hpp"
#include "diagnostics.hpp"
#include "fourier.hpp"
#include "grid.hpp"
#include "inequality.hpp"
#include "initial_data.hpp"
#include "model.hpp"
#include "norms.hpp"
#include "picard.hpp"
#include "scenario.hpp"
#include "snapshot.hpp"
#include "spectral_ops.hpp"
#include "stepper.hpp"

struct ch6_grid {
  ch6::GridPtr g;
};
struct ch6_field {
  ch6::RealField f;
};
struct ch6_params {
  ch6::PhysicalParams p;
};
struct ch6_config {
  ch6::KeyValues kv;
};
struct ch6_table {
  std::vector<std::string> names;
  std::vector<std::vector<double>> rows;
};

namespace {

thread_local std::string t_error;

int fail(int code, const std::string& msg) {
  t_error = msg;
  return code;
}

template <class Fn>
int guarded(Fn&& fn) {
  t_error.clear();
  try {
    return fn();
  } catch (const ch6::BlowupError& e) {
    return fail(CH6_E_BLOWUP, e.what());
  } catch (const ch6::ConfigError& e) {
    return fail(CH6_E_CONFIG, e.what());
  } catch (const ch6::DomainError& e) {
    return fail(CH6_E_DOMAIN, e.what());
  } catch (const ch6::IoError& e) {
    return fail(CH6_E_IO, e.what());
  } catch (const std::bad_alloc&) {
    return fail(CH6_E_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(CH6_E_INTERNAL, e.what());
  }
}

#define REQUIRE_ARG(cond, msg)                 \
  do {                                         \
    if (!(cond)) return fail(CH6_E_ARG, msg);  \
  } while (0)

ch6::Scheme parse_scheme(const char* s) {
  if (!s || std::strcmp(s, "ifrk4") == 0) return ch6::Scheme::IFRK4;
  if (std::strcmp(s, "ifeuler") == 0) return ch6::Scheme::IFEuler;
  throw ch6::ConfigError(std::string("unknown scheme '") + s +
                         "' (one of: ifrk4, ifeuler)");
}

int copy_string(const std::string& s, char* buf, size_t cap, size_t* needed) {
  if (needed) *needed = s.size();
  if (buf && cap > 0) {
    size_t ncopy = std::min(cap - 1, s.size());
    std::memcpy(buf, s.data(), ncopy);
    buf[ncopy] = '\0';
  }
  return CH6_OK;
}

ch6_table* table_from_records(const std::vector<ch6::DiagnosticsRecord>& records) {
  auto* t = new ch6_table;
  if (!records.empty()) {
    int maxg = static_cast<int>(records.front().grad_l2.size()) - 1;
    std::stringstream ss(ch6::csv_header(maxg));
    std::string cell;
    while (std::getline(ss, cell, ',')) t->names.push_back(cell);
    for (const auto& r : records) t->rows.push_back(ch6::record_values(r));
  }
  return t;
}

ch6::RunConfig resolve_config(const ch6_config* c) {
  return ch6::RunConfig::from_kv(c->kv);
}

}  // namespace

extern "C" {

const char* ch6_version(void) { return "0.1.0"; }

const char* ch6_last_error(void) { return t_error.c_str(); }

/* -------------------------------------------------------------- grid */

int ch6_grid_create(int dim, int n, double length, ch6_grid** out) {
  REQUIRE_ARG(out, "ch6_grid_create: out is NULL");
  *out = nullptr;
  return guarded([&] {
    *out = new ch6_grid{ch6::Grid::create(dim, n, length)};
    return CH6_OK;
  });
}

void ch6_grid_destroy(ch6_grid* g) { delete g; }

int ch6_grid_info(const ch6_grid* g, int* dim, int* n, double* length) {
  REQUIRE_ARG(g, "ch6_grid_info: grid is NULL");
  if (dim) *dim = g->g->dim();
  if (n) *n = g->g->n();
  if (length) *length = g->g->length();
  return CH6_OK;
}

size_t ch6_grid_point_count(const ch6_grid* g) {
  return g ? g->g->point_count() : 0;
}

/* ------------------------------------------------------------- field */

int ch6_field_create(const ch6_grid* g, ch6_field** out) {
  REQUIRE_ARG(g && out, "ch6_field_create: grid or out is NULL");
  *out = nullptr;
  return guarded([&] {
    *out = new ch6_field{ch6::RealField::zeros(g->g)};
    return CH6_OK;
  });
}

int ch6_field_clone(const ch6_field* f, ch6_field** out) {
  REQUIRE_ARG(f && out, "ch6_field_clone: field or out is NULL");
  *out = nullptr;
  return guarded([&] {
    *out = new ch6_field{f->f};
    return CH6_OK;
  });
}

void ch6_field_destroy(ch6_field* f) { delete f; }

int ch6_field_size(const ch6_field* f, size_t* count) {
  REQUIRE_ARG(f && count, "ch6_field_size: field or count is NULL");
  *count = f->f.v.size();
  return CH6_OK;
}

int ch6_field_grid_info(const ch6_field* f, int* dim, int* n, double* length) {
  REQUIRE_ARG(f, "ch6_field_grid_info: field is NULL");
  if (dim) *dim = f->f.grid->dim();
  if (n) *n = f->f.grid->n();
  if (length) *length = f->f.grid->length();
  return CH6_OK;
}

int ch6_field_data(ch6_field* f, double** out) {
  REQUIRE_ARG(f && out, "ch6_field_data: field or out is NULL");
  *out = f->f.v.data();
  return CH6_OK;
}

int ch6_field_copy_in(ch6_field* f, const double* src, size_t count) {
  REQUIRE_ARG(f && src, "ch6_field_copy_in: field or src is NULL");
  REQUIRE_ARG(count == f->f.v.size(), "ch6_field_copy_in: count does not match the grid");
  std::memcpy(f->f.v.data(), src, count * sizeof(double));
  return CH6_OK;
}

int ch6_field_copy_out(const ch6_field* f, double* dst, size_t count) {
  REQUIRE_ARG(f && dst, "ch6_field_copy_out: field or dst is NULL");
  REQUIRE_ARG(count == f->f.v.size(), "ch6_field_copy_out: count does not match the grid");
  std::memcpy(dst, f->f.v.data(), count * sizeof(double));
  return CH6_OK;
}

int ch6_field_mean(const ch6_field* f, double* out) {
  REQUIRE_ARG(f && out, "ch6_field_mean: field or out is NULL");
  *out = f->f.mean();
  return CH6_OK;
}

int ch6_field_max_abs(const ch6_field* f, double* out) {
  REQUIRE_ARG(f && out, "ch6_field_max_abs: field or out is NULL");
  *out = f->f.max_abs();
  return CH6_OK;
}

int ch6_field_save(const ch6_field* f, const char* path) {
  REQUIRE_ARG(f && path, "ch6_field_save: field or path is NULL");
  return guarded([&] {
    ch6::write_snapshot(f->f, path);
    return CH6_OK;
  });
}

int ch6_field_load(const char* path, ch6_field** out) {
  REQUIRE_ARG(path && out, "ch6_field_load: path or out is NULL");
  *out = nullptr;
  return guarded([&] {
    *out = new ch6_field{ch6::read_snapshot(path)};
    return CH6_OK;
  });
}

/* ------------------------------------------------------------ params */

int ch6_params_gompper_schick(double delta, double g0, double g2, double h0,
                              double mobility, ch6_params** out) {
  REQUIRE_ARG(out, "ch6_params_gompper_schick: out is NULL");
  *out = nullptr;
  return guarded([&] {
    *out = new ch6_params{
        ch6::PhysicalParams::gompper_schick(delta, g0, g2, h0, mobility)};
    return CH6_OK;
  });
}

int ch6_params_pawlow(double delta, double alpha, double mobility, ch6_params** out) {
  REQUIRE_ARG(out, "ch6_params_pawlow: out is NULL");
  *out = nullptr;
  return guarded([&] {
    *out = new ch6_params{ch6::PhysicalParams::pawlow_quartic(delta, alpha, mobility)};
    return CH6_OK;
  });
}

void ch6_params_destroy(ch6_params* p) { delete p; }

int ch6_params_kappa(const ch6_params* p, double* kappa0, double* kappa1,
                     double* kappa2) {
  REQUIRE_ARG(p, "ch6_params_kappa: params is NULL");
  if (kappa0) *kappa0 = p->p.kappa0;
  if (kappa1) *kappa1 = p->p.kappa1;
  if (kappa2) *kappa2 = p->p.kappa2;
  return CH6_OK;
}

int ch6_map_parameters(double g0, double g2, double* kappa0, double* kappa1,
                       double* kappa2) {
  return guarded([&] {
    ch6::KappaTriple k = ch6::map_parameters(g0, g2);
    if (kappa0) *kappa0 = k.kappa0;
    if (kappa1) *kappa1 = k.kappa1;
    if (kappa2) *kappa2 = k.kappa2;
    return CH6_OK;
  });
}

int ch6_constitutive(const ch6_params* p, const char* which, double s, double* out) {
  REQUIRE_ARG(p && which && out, "ch6_constitutive: params, which or out is NULL");
  return guarded([&] {
    switch (ch6::parse_constitutive(which)) {
      case ch6::ConstitutiveWhich::F: *out = p->p.f(s); break;
      case ch6::ConstitutiveWhich::FPrime: *out = p->p.fprime(s); break;
      case ch6::ConstitutiveWhich::A: *out = p->p.a(s); break;
      case ch6::ConstitutiveWhich::APrime: *out = p->p.aprime(s); break;
      case ch6::ConstitutiveWhich::WAntiderivative: *out = p->p.W(s); break;
    }
    return CH6_OK;
  });
}

/* ----------------------------------------------- norms and operators */

int ch6_norm_lp(const ch6_field* f, double p, double* out) {
  REQUIRE_ARG(f && out, "ch6_norm_lp: field or out is NULL");
  return guarded([&] {
    *out = ch6::lp_norm(f->f, p);
    return CH6_OK;
  });
}

int ch6_norm_sobolev(const ch6_field* f, double s, int homogeneous, int strict,
                     double* out) {
  REQUIRE_ARG(f && out, "ch6_norm_sobolev: field or out is NULL");
  return guarded([&] {
    ch6::ZeroModePolicy pol =
        strict ? ch6::ZeroModePolicy::Strict : ch6::ZeroModePolicy::Project;
    *out = ch6::norm(f->f, ch6::NormSpec::sobolev(s, homogeneous != 0), pol);
    return CH6_OK;
  });
}

int ch6_norm_grad(const ch6_field* f, int order, double* out) {
  REQUIRE_ARG(f && out, "ch6_norm_grad: field or out is NULL");
  return guarded([&] {
    *out = ch6::norm(f->f, ch6::NormSpec::deriv_l2(order));
    return CH6_OK;
  });
}

int ch6_apply_fractional(ch6_field* f, double alpha, int strict) {
  REQUIRE_ARG(f, "ch6_apply_fractional: field is NULL");
  return guarded([&] {
    ch6::Fourier fft(f->f.grid);
    ch6::SpectralField h = fft.forward(f->f);
    ch6::apply_fractional(h, alpha,
                          strict ? ch6::ZeroModePolicy::Strict
                                 : ch6::ZeroModePolicy::Project);
    f->f = fft.inverse(h);
    return CH6_OK;
  });
}

int ch6_apply_derivative(ch6_field* f, int axis, int order) {
  REQUIRE_ARG(f, "ch6_apply_derivative: field is NULL");
  REQUIRE_ARG(axis >= 0 && axis < f->f.grid->dim(),
              "ch6_apply_derivative: axis out of range");
  REQUIRE_ARG(order >= 1, "ch6_apply_derivative: order must be >= 1");
  return guarded([&] {
    ch6::Fourier fft(f->f.grid);
    ch6::SpectralField h = fft.forward(f->f);
    ch6::apply_derivative(h, axis, order);
    f->f = fft.inverse(h);
    return CH6_OK;
  });
}

int ch6_dealias_field(ch6_field* f) {
  REQUIRE_ARG(f, "ch6_dealias_field: field is NULL");
  return guarded([&] {
    ch6::Fourier fft(f->f.grid);
    ch6::SpectralField h = fft.forward(f->f);
    ch6::dealias(h);
    f->f = fft.inverse(h);
    return CH6_OK;
  });
}

/* ------------------------------------------------------------- model */

int ch6_chemical_potential(const ch6_field* u, const ch6_params* p, ch6_field** mu) {
  REQUIRE_ARG(u && p && mu, "ch6_chemical_potential: an argument is NULL");
  *mu = nullptr;
  return guarded([&] {
    ch6::ModelWork w(u->f.grid);
    *mu = new ch6_field{ch6::chemical_potential(u->f, p->p, w)};
    return CH6_OK;
  });
}

int ch6_nonlinear_rhs(const ch6_field* u, const ch6_params* p, ch6_field** out) {
  REQUIRE_ARG(u && p && out, "ch6_nonlinear_rhs: an argument is NULL");
  *out = nullptr;
  return guarded([&] {
    ch6::ModelWork w(u->f.grid);
    *out = new ch6_field{ch6::nonlinear_rhs(u->f, p->p, w)};
    return CH6_OK;
  });
}

int ch6_free_energy(const ch6_field* u, const ch6_params* p, double* out) {
  REQUIRE_ARG(u && p && out, "ch6_free_energy: an argument is NULL");
  return guarded([&] {
    ch6::ModelWork w(u->f.grid);
    *out = ch6::free_energy(u->f, p->p, w);
    return CH6_OK;
  });
}

int ch6_formulation_residual(const ch6_field* u, const ch6_params* p, double* out) {
  REQUIRE_ARG(u && p && out, "ch6_formulation_residual: an argument is NULL");
  return guarded([&] {
    ch6::ModelWork w(u->f.grid);
    *out = ch6::formulation_residual(u->f, p->p, w);
    return CH6_OK;
  });
}

double ch6_linear_propagator(double k_magnitude, const ch6_params* p, double dt) {
  if (!p || !std::isfinite(k_magnitude) || !std::isfinite(dt) || dt < 0.0)
    return std::numeric_limits<double>::quiet_NaN();
  return ch6::linear_propagator(k_magnitude, p->p, dt);
}

/* ---------------------------------------------------------- stepping */

int ch6_step(ch6_field* u, const ch6_params* p, const char* scheme, double dt,
             int nsteps, int dealias, int oversample) {
  REQUIRE_ARG(u && p, "ch6_step: field or params is NULL");
  REQUIRE_ARG(std::isfinite(dt) && dt > 0.0, "ch6_step: dt must be positive");
  REQUIRE_ARG(nsteps >= 1, "ch6_step: nsteps must be >= 1");
  return guarded([&] {
    ch6::StepperConfig cfg;
    cfg.scheme = parse_scheme(scheme);
    cfg.dt = dt;
    cfg.dealias = dealias != 0;
    cfg.oversample = oversample != 0;
    ch6::Stepper st(u->f.grid, p->p, cfg);
    ch6::SpectralField uh = st.work().fft().forward(u->f);
    if (cfg.dealias) ch6::dealias(uh);
    ch6::SpectralField last = uh;
    for (int i = 0; i < nsteps; ++i) {
      last = uh;
      st.step(uh, dt);
      if (!uh.finite()) {
        u->f = st.work().fft().inverse(last);
        throw ch6::BlowupError("state stopped being finite at step " +
                                   std::to_string(i + 1) + " of " +
                                   std::to_string(nsteps),
                               (i + 1) * dt, u->f.max_abs());
      }
    }
    u->f = st.work().fft().inverse(uh);
    return CH6_OK;
  });
}

int ch6_evolve(const ch6_field* u0, const ch6_params* p, const ch6_evolve_opts* opts,
               ch6_table** diagnostics, ch6_field** u_final) {
  REQUIRE_ARG(u0 && p && opts, "ch6_evolve: field, params or opts is NULL");
  if (diagnostics) *diagnostics = nullptr;
  if (u_final) *u_final = nullptr;
  return guarded([&]() -> int {
    ch6::StepperConfig scfg;
    scfg.scheme = parse_scheme(opts->scheme);
    scfg.dt = opts->dt;
    scfg.cfl = opts->cfl > 0.0 ? opts->cfl : 0.5;
    scfg.dealias = opts->dealias != 0;
    scfg.linear_only = opts->linear_only != 0;
    scfg.oversample = opts->oversample != 0;
    ch6::EvolveOptions eopts;
    eopts.t_end = opts->t_end;
    eopts.cadence = opts->cadence;
    eopts.request.max_grad_order = opts->max_grad_order < 0 ? 3 : opts->max_grad_order;
    eopts.request.neg_s = opts->neg_s <= 0.0 ? 0.5 : opts->neg_s;
    eopts.request.with_energy = opts->with_energy != 0;
    if (!(eopts.t_end > 0.0))
      throw ch6::ConfigError("ch6_evolve: t_end must be > 0");
    if (!(eopts.cadence > 0.0) || eopts.cadence > eopts.t_end)
      throw ch6::ConfigError("ch6_evolve: cadence must lie in (0, t_end]");

    ch6::EvolveResult r = ch6::evolve(u0->f, p->p, scfg, eopts);
    if (diagnostics) *diagnostics = table_from_records(r.records);
    if (u_final && r.final_state.grid) *u_final = new ch6_field{r.final_state};
    if (r.blew_up) return fail(CH6_E_BLOWUP, r.message);
    return CH6_OK;
  });
}

int ch6_heat_baseline(const ch6_field* u0, double t, ch6_field** out) {
  REQUIRE_ARG(u0 && out, "ch6_heat_baseline: field or out is NULL");
  REQUIRE_ARG(std::isfinite(t) && t >= 0.0, "ch6_heat_baseline: t must be >= 0");
  *out = nullptr;
  return guarded([&] {
    ch6::Fourier fft(u0->f.grid);
    ch6::SpectralField h = fft.forward(u0->f);
    *out = new ch6_field{fft.inverse(ch6::heat_baseline_hat(h, t))};
    return CH6_OK;
  });
}

/* ------------------------------------------------------- fixed point */

int ch6_picard(const ch6_field* u0, const ch6_params* p, double t1, int jmax,
               int inner_steps, int dealias, double* ratios, size_t ratios_cap,
               size_t* n_ratios, int* contraction, int* degenerate) {
  REQUIRE_ARG(u0 && p, "ch6_picard: field or params is NULL");
  REQUIRE_ARG(ratios || ratios_cap == 0, "ch6_picard: ratios is NULL with nonzero cap");
  return guarded([&] {
    ch6::PicardConfig cfg;
    cfg.t1 = t1;
    cfg.jmax = jmax;
    cfg.inner_steps = inner_steps;
    cfg.dealias = dealias != 0;
    ch6::PicardResult r = ch6::picard_local_solve(u0->f, p->p, cfg);
    size_t ncopy = std::min(ratios_cap, r.ratios.size());
    for (size_t i = 0; i < ncopy; ++i) ratios[i] = r.ratios[i];
    if (n_ratios) *n_ratios = r.ratios.size();
    if (contraction) *contraction = r.contraction ? 1 : 0;
    if (degenerate) *degenerate = r.degenerate ? 1 : 0;
    if (!r.message.empty()) t_error = r.message;  // informational, not a failure
    return CH6_OK;
  });
}

/* -------------------------------------------------------- decay fits */

int ch6_fit_decay(const double* t, const double* value, size_t count, double t1,
                  double t2, double* sigma_hat, double* r2, int* samples) {
  REQUIRE_ARG(t && value, "ch6_fit_decay: t or value is NULL");
  REQUIRE_ARG(count > 0, "ch6_fit_decay: count is zero");
  return guarded([&] {
    std::vector<double> tv(t, t + count), vv(value, value + count);
    ch6::DecayFit f = ch6::fit_decay(tv, vv, t1, t2);
    if (sigma_hat) *sigma_hat = f.sigma_hat;
    if (r2) *r2 = f.r2;
    if (samples) *samples = f.samples;
    return CH6_OK;
  });
}

int ch6_fit_csv(const char* path, const char* column, double t1, double t2,
                double* sigma_hat, double* r2, int* samples) {
  REQUIRE_ARG(path && column, "ch6_fit_csv: path or column is NULL");
  return guarded([&] {
    ch6::CsvColumn col = ch6::read_csv_column(path, column);
    ch6::DecayFit f = ch6::fit_decay(col.t, col.value, t1, t2);
    if (sigma_hat) *sigma_hat = f.sigma_hat;
    if (r2) *r2 = f.r2;
    if (samples) *samples = f.samples;
    return CH6_OK;
  });
}

int ch6_decay_window(double cadence, double box_length, double kappa0, double* t1,
                     double* t2) {
  return guarded([&] {
    double a = 0.0, b = 0.0;
    ch6::decay_window(cadence, box_length, kappa0, &a, &b);
    if (t1) *t1 = a;
    if (t2) *t2 = b;
    return CH6_OK;
  });
}

int ch6_interpolation_ratio(const ch6_field* f, double l, double k, double s,
                            double* ratio) {
  REQUIRE_ARG(f && ratio, "ch6_interpolation_ratio: field or ratio is NULL");
  return guarded([&] {
    ch6::InequalityCase c = ch6::make_interpolation(l, k, s);
    ch6::Fourier fft(f->f.grid);
    *ratio = ch6::check(c, f->f, nullptr, fft);
    return CH6_OK;
  });
}

/* ------------------------------------------------------------- table */

void ch6_table_destroy(ch6_table* t) { delete t; }

size_t ch6_table_rows(const ch6_table* t) { return t ? t->rows.size() : 0; }

size_t ch6_table_cols(const ch6_table* t) { return t ? t->names.size() : 0; }

const char* ch6_table_column_name(const ch6_table* t, size_t col) {
  if (!t || col >= t->names.size()) return nullptr;
  return t->names[col].c_str();
}

int ch6_table_find_column(const ch6_table* t, const char* name, size_t* col) {
  REQUIRE_ARG(t && name && col, "ch6_table_find_column: an argument is NULL");
  for (size_t i = 0; i < t->names.size(); ++i) {
    if (t->names[i] == name) {
      *col = i;
      return CH6_OK;
    }
  }
  return fail(CH6_E_ARG, std::string("ch6_table_find_column: no column named '") +
                             name + "'");
}

int ch6_table_cell(const ch6_table* t, size_t row, size_t col, double* out) {
  REQUIRE_ARG(t && out, "ch6_table_cell: table or out is NULL");
  REQUIRE_ARG(row < t->rows.size() && col < t->rows[row].size(),
              "ch6_table_cell: index out of range");
  *out = t->rows[row][col];
  return CH6_OK;
}

/* ------------------------------------------------------------ config */

int ch6_config_create(ch6_config** out) {
  REQUIRE_ARG(out, "ch6_config_create: out is NULL");
  *out = nullptr;
  return guarded([&] {
    *out = new ch6_config{};
    return CH6_OK;
  });
}

int ch6_config_load(const char* path, ch6_config** out) {
  REQUIRE_ARG(path && out, "ch6_config_load: path or out is NULL");
  *out = nullptr;
  return guarded([&] {
    *out = new ch6_config{ch6::KeyValues::load(path)};
    return CH6_OK;
  });
}

void ch6_config_destroy(ch6_config* c) { delete c; }

int ch6_config_set(ch6_config* c, const char* key, const char* value) {
  REQUIRE_ARG(c && key && value, "ch6_config_set: an argument is NULL");
  REQUIRE_ARG(*key != '\0', "ch6_config_set: key is empty");
  return guarded([&] {
    c->kv.set(key, value);
    return CH6_OK;
  });
}

int ch6_config_get(const ch6_config* c, const char* key, char* buf, size_t cap,
                   size_t* needed) {
  REQUIRE_ARG(c && key, "ch6_config_get: config or key is NULL");
  return guarded([&] {
    ch6::RunConfig rc = resolve_config(c);
    ch6::KeyValues resolved = ch6::KeyValues::from_string(rc.resolved_text());
    const std::string* v = resolved.find(key);
    if (!v) {
      // Keys absent from the resolved rendering (like init.path when unset)
      // still resolve to their raw value when one was given.
      v = c->kv.find(key);
      if (!v)
        throw ch6::ConfigError(std::string("unknown config key '") + key + "'");
    }
    return copy_string(*v, buf, cap, needed);
  });
}

int ch6_config_validate(const ch6_config* c) {
  REQUIRE_ARG(c, "ch6_config_validate: config is NULL");
  return guarded([&] {
    resolve_config(c);
    return CH6_OK;
  });
}

int ch6_config_render(const ch6_config* c, char* buf, size_t cap, size_t* needed) {
  REQUIRE_ARG(c, "ch6_config_render: config is NULL");
  return guarded([&] {
    return copy_string(resolve_config(c).resolved_text(), buf, cap, needed);
  });
}

/* ---------------------------------------------------------- scenario */

int ch6_run_scenario(const ch6_config* c, const char* out_dir, int* scenario_exit,
                     int* checks_passed) {
  REQUIRE_ARG(c, "ch6_run_scenario: config is NULL");
  return guarded([&] {
    ch6::KeyValues kv = c->kv;
    if (out_dir) kv.set("out", out_dir);
    ch6::RunConfig rc = ch6::RunConfig::from_kv(kv);
    ch6::ScenarioResult r = ch6::run_scenario(rc);
    if (scenario_exit) *scenario_exit = r.exit_code;
    if (checks_passed) *checks_passed = r.checks_passed ? 1 : 0;
    if (!r.message.empty()) t_error = r.message;
    return CH6_OK;
  });
}

int ch6_initial_data(const ch6_config* c, ch6_field** out) {
  REQUIRE_ARG(c && out, "ch6_initial_data: config or out is NULL");
  *out = nullptr;
  return guarded([&] {
    ch6::RunConfig rc = resolve_config(c);
    ch6::GridPtr grid = ch6::Grid::create(rc.dim, rc.n, rc.length);
    ch6::Fourier fft(grid);
    ch6::InitialData d = ch6::generate_initial_data(rc.init, grid, rc.seed, fft);
    *out = new ch6_field{std::move(d.u)};
    return CH6_OK;
  });
}

} /* extern "C" */

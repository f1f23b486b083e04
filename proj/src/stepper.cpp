#include "stepper.hpp"

#include <cmath>
#include <limits>

#include "common.hpp"
#include "spectral_ops.hpp"

namespace ch6 {

double linear_propagator(double k_magnitude, const PhysicalParams& p, double dt) {
  const double q = k_magnitude * k_magnitude;
  return std::exp(-p.mobility * (p.delta * q * q * q + p.kappa0 * q * q) * dt);
}

Stepper::Stepper(GridPtr grid, const PhysicalParams& p, const StepperConfig& cfg)
    : grid_(std::move(grid)), p_(p), cfg_(cfg), work_(grid_, cfg.oversample) {
  k1_ = SpectralField::zeros(grid_);
  k2_ = SpectralField::zeros(grid_);
  k3_ = SpectralField::zeros(grid_);
  k4_ = SpectralField::zeros(grid_);
  stage_ = SpectralField::zeros(grid_);
  e_full_.assign(grid_->spec_count(), 1.0);
  e_half_.assign(grid_->spec_count(), 1.0);
}

void Stepper::refresh(double dt) {
  if (dt == cached_dt_) return;
  const Grid& g = *grid_;
  for (std::size_t s = 0; s < g.spec_count(); ++s) {
    const double q = g.ksq(s);
    const double rate = p_.mobility * (p_.delta * q * q * q + p_.kappa0 * q * q);
    e_full_[s] = std::exp(-rate * dt);
    e_half_[s] = std::exp(-rate * 0.5 * dt);
  }
  cached_dt_ = dt;
}

void Stepper::rhs(const SpectralField& in, SpectralField& out) {
  if (cfg_.linear_only) {
    if (out.c.size() != in.c.size()) out = SpectralField::zeros(grid_);
    for (auto& z : out.c) z = 0.0;
    return;
  }
  if (p_.potential == PotentialKind::GompperSchick) {
    out = nonlinear_rhs_hat(in, p_, work_);
  } else {
    // PawlowQuartic keeps the whole mu bracket explicit:
    //   u_t = -M delta |k|^6 u_hat + M |k|^2 bracket_hat.
    SpectralField d = in;
    if (cfg_.dealias) dealias(d);
    work_.ingredients(d);
    const auto& u = work_.u();
    const auto& lap = work_.lap();
    const auto& gsq = work_.gsq();
    auto& b = work_.bracket();
    for (std::size_t i = 0; i < u.size(); ++i)
      b[i] = p_.a(u[i]) * lap[i] + 0.5 * p_.aprime(u[i]) * gsq[i] - p_.f(u[i]);
    work_.bracket_to_coarse(out);
    const Grid& g = *grid_;
    for (std::size_t s = 0; s < g.spec_count(); ++s) out.c[s] *= g.ksq(s);
  }
  if (p_.mobility != 1.0)
    for (auto& z : out.c) z *= p_.mobility;
}

void Stepper::step(SpectralField& u_hat, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw DomainError("step size must be positive and finite");
  refresh(dt);
  const std::size_t ns = grid_->spec_count();
  if (cfg_.dealias) dealias(u_hat);

  if (cfg_.scheme == Scheme::IFEuler || cfg_.linear_only) {
    if (cfg_.scheme == Scheme::IFEuler) {
      rhs(u_hat, k1_);
      for (std::size_t s = 0; s < ns; ++s)
        u_hat.c[s] = e_full_[s] * (u_hat.c[s] + dt * k1_.c[s]);
    } else {
      // linear_only with RK4 requested: all stages vanish, apply the flow.
      for (std::size_t s = 0; s < ns; ++s) u_hat.c[s] *= e_full_[s];
    }
    return;
  }

  // Integrating-factor RK4.  Stage values are the physical N evaluations;
  // the exponential weights place them at the right gauge times.
  rhs(u_hat, k1_);
  for (std::size_t s = 0; s < ns; ++s)
    stage_.c[s] = e_half_[s] * (u_hat.c[s] + 0.5 * dt * k1_.c[s]);
  rhs(stage_, k2_);
  for (std::size_t s = 0; s < ns; ++s)
    stage_.c[s] = e_half_[s] * u_hat.c[s] + 0.5 * dt * k2_.c[s];
  rhs(stage_, k3_);
  for (std::size_t s = 0; s < ns; ++s)
    stage_.c[s] = e_full_[s] * u_hat.c[s] + dt * e_half_[s] * k3_.c[s];
  rhs(stage_, k4_);
  for (std::size_t s = 0; s < ns; ++s)
    u_hat.c[s] = e_full_[s] * u_hat.c[s] +
                 (dt / 6.0) * (e_full_[s] * k1_.c[s] +
                               2.0 * e_half_[s] * (k2_.c[s] + k3_.c[s]) + k4_.c[s]);
}

RealField Stepper::step_once(const RealField& u, double dt, double t_now) {
  SpectralField uh = work_.fft().forward(u);
  step(uh, dt);
  if (!uh.finite())
    throw BlowupError("state became non-finite during a step", t_now + dt, u.max_abs());
  return work_.fft().inverse(uh);
}

double Stepper::auto_dt(double u_scale) const {
  if (cfg_.linear_only) return std::numeric_limits<double>::infinity();
  const double kmax = cfg_.dealias ? grid_->k_max_dealiased()
                                   : grid_->n() / 2 * grid_->k_fundamental();
  const double k2 = kmax * kmax;
  const double k4 = k2 * k2;
  const double a = std::abs(u_scale);
  double rate;
  if (p_.potential == PotentialKind::GompperSchick) {
    // Fourth-order coefficient of the explicit bracket plus the second-order
    // contribution of the bulk term; the kappa2^2 part is linear but sits in
    // the explicit operator, so it counts toward the stiffness budget.
    const double fp = 6.0 * std::pow(a, 5) + 4.0 * std::abs(p_.h0 - 2.0) * a * a * a +
                      2.0 * std::abs(1.0 - 2.0 * p_.h0) * a;
    rate = p_.kappa1 * (2.0 * a * a + p_.kappa2 * p_.kappa2) * k4 + fp * k2;
  } else {
    const double fp = 3.0 * a * a + std::abs(1.0 - p_.alpha);
    rate = 2.0 * k4 + fp * k2;
  }
  rate *= p_.mobility;
  if (!(rate > 0.0)) return std::numeric_limits<double>::infinity();
  // 2.0 is within the real-axis stability interval of both schemes.
  return cfg_.cfl * 2.0 / rate;
}

EvolveResult evolve(const RealField& u0, const PhysicalParams& p,
                    const StepperConfig& scfg, const EvolveOptions& opts,
                    const std::function<void(const DiagnosticsRecord&)>& on_record,
                    const std::function<void(double, const RealField&)>& on_snapshot) {
  if (!(opts.t_end > 0.0)) throw ConfigError("run.t_end must be positive");
  if (!(opts.cadence > 0.0)) throw ConfigError("run.cadence must be positive");

  Stepper stepper(u0.grid, p, scfg);
  EvolveResult res;

  std::vector<double> ticks;
  ticks.push_back(0.0);
  const double rel = 1e-9 * opts.cadence;
  for (double t = opts.cadence; t < opts.t_end - rel; t += opts.cadence)
    ticks.push_back(t);
  ticks.push_back(opts.t_end);

  SpectralField uh = stepper.work().fft().forward(u0);
  if (scfg.dealias) dealias(uh);

  auto emit = [&](double t) {
    DiagnosticsRecord r = record(uh, t, p, opts.request, stepper.work());
    if (on_record) on_record(r);
    if (on_snapshot) on_snapshot(t, stepper.work().fft().inverse(uh));
    res.records.push_back(std::move(r));
  };

  double u_scale = u0.max_abs();
  emit(0.0);

  for (std::size_t i = 0; i + 1 < ticks.size(); ++i) {
    const double span = ticks[i + 1] - ticks[i];
    double dt_target = scfg.dt > 0.0 ? scfg.dt : std::min(stepper.auto_dt(u_scale), span);
    if (!(dt_target > 0.0) || !std::isfinite(dt_target)) dt_target = span;
    const int m = std::max(1, static_cast<int>(std::ceil(span / dt_target - 1e-9)));
    const double h = span / m;
    res.dt_used = h;
    for (int j = 0; j < m; ++j) stepper.step(uh, h);
    if (!uh.finite()) {
      res.blew_up = true;
      res.blowup_time = ticks[i + 1];
      res.message = "state became non-finite before t = " + std::to_string(ticks[i + 1]);
      return res;
    }
    emit(ticks[i + 1]);
    if (scfg.dt <= 0.0)  // let the stability rule follow the current amplitude
      u_scale = stepper.work().fft().inverse(uh).max_abs();
  }

  res.final_hat = uh;
  res.final_state = stepper.work().fft().inverse(uh);
  return res;
}

}  // namespace ch6

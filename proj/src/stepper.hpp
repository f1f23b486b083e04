#pragma once

#include <functional>
#include <string>
#include <vector>

#include "diagnostics.hpp"
#include "model.hpp"

namespace ch6 {

enum class Scheme { IFEuler, IFRK4 };

struct StepperConfig {
  Scheme scheme = Scheme::IFRK4;
  double dt = 0.0;      // <= 0 selects the stability rule via auto_dt
  double cfl = 0.5;     // safety factor for auto_dt
  bool dealias = true;
  bool linear_only = false;
  bool oversample = false;
};

// exp(-mobility (delta |k|^6 + kappa0 |k|^4) dt): exact flow of the stiff
// linear part.  kappa0 = 0 for the PawlowQuartic model, whose destabilizing
// fourth-order term is treated explicitly.
double linear_propagator(double k_magnitude, const PhysicalParams& p, double dt);

// Integrating-factor stepping in spectral space.  The linear part is advanced
// exactly by the propagator; the remaining terms are advanced by Euler or by
// the classical RK4 in the integrating-factor variables.  The zero mode is
// untouched by construction (propagator(0) = 1, rhs(0) = 0), so the mean is
// conserved to the bit.
class Stepper {
public:
  Stepper(GridPtr grid, const PhysicalParams& p, const StepperConfig& cfg);

  void step(SpectralField& u_hat, double dt);
  // Real-space convenience wrapper; throws BlowupError on non-finite output.
  RealField step_once(const RealField& u, double dt, double t_now = 0.0);

  // Largest dt for which the explicitly treated terms stay in the stability
  // region, estimated from the amplitude scale of the state.
  double auto_dt(double u_scale) const;

  const StepperConfig& config() const { return cfg_; }
  const PhysicalParams& params() const { return p_; }
  ModelWork& work() { return work_; }

private:
  void rhs(const SpectralField& in, SpectralField& out);
  void refresh(double dt);

  GridPtr grid_;
  PhysicalParams p_;
  StepperConfig cfg_;
  ModelWork work_;
  double cached_dt_ = -1.0;
  std::vector<double> e_full_, e_half_;
  SpectralField k1_, k2_, k3_, k4_, stage_;
};

struct EvolveOptions {
  double t_end = 1.0;
  double cadence = 0.1;  // diagnostics interval; also caps the auto dt
  DiagnosticsRequest request;
};

struct EvolveResult {
  std::vector<DiagnosticsRecord> records;
  SpectralField final_hat;
  RealField final_state;
  double dt_used = 0.0;
  bool blew_up = false;
  double blowup_time = 0.0;
  std::string message;
};

// Advances u0 to t_end, emitting one diagnostics record at t = 0, at every
// cadence tick and at t_end.  Returns early with blew_up set when the state
// stops being finite; the records gathered so far are kept.
EvolveResult evolve(const RealField& u0, const PhysicalParams& p,
                    const StepperConfig& scfg, const EvolveOptions& opts,
                    const std::function<void(const DiagnosticsRecord&)>& on_record = {},
                    const std::function<void(double, const RealField&)>& on_snapshot = {});

}  // namespace ch6

// End-to-end acceptance harness.  Each criterion prints exactly one
// [PASS]/[FAIL] line with the measured numbers; the exit status is the
// number of failed criteria.  Everything runs at desk scale, seconds to a
// few minutes per criterion.
#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include "common.hpp"
#include "config.hpp"
#include "diagnostics.hpp"
#include "field.hpp"
#include "fourier.hpp"
#include "grid.hpp"
#include "inequality.hpp"
#include "initial_data.hpp"
#include "model.hpp"
#include "norms.hpp"
#include "picard.hpp"
#include "potential.hpp"
#include "random_field.hpp"
#include "scenario.hpp"
#include "spectral_ops.hpp"
#include "stepper.hpp"

namespace {

using namespace ch6;

constexpr double kTwoPi = 6.283185307179586;

int g_failures = 0;

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

void report(int id, bool pass, const std::string& detail) {
  std::printf("[%s] criterion %d: %s\n", pass ? "PASS" : "FAIL", id,
              detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

template <class Fn>
void criterion(int id, Fn&& fn) {
  try {
    std::pair<bool, std::string> r = fn();
    report(id, r.first, r.second);
  } catch (const std::exception& e) {
    report(id, false, std::string("unexpected exception: ") + e.what());
  }
}

double lsq_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

double rel_max_diff(const RealField& a, const RealField& b) {
  double diff = 0.0, scale = 0.0;
  for (size_t i = 0; i < a.v.size(); ++i) {
    diff = std::max(diff, std::fabs(a.v[i] - b.v[i]));
    scale = std::max(scale, std::fabs(b.v[i]));
  }
  return diff / scale;
}

// 1. The integrating factor advances the purely linear flow exactly.
std::pair<bool, std::string> linear_oracle() {
  GridPtr g = Grid::create(1, 16, kTwoPi);
  PhysicalParams p = PhysicalParams::gompper_schick(1.0, 1.0, 1.0, 0.2);
  const double amp = 1e-3;
  RealField u0 = RealField::from_function(
      g, [&](const std::array<double, 3>& x) { return amp * std::sin(x[0]); });

  const int nsteps = 1000;
  const double dt = 1e-3;
  const double exact = amp * std::exp(-p.mobility * (p.delta + p.kappa0) *
                                      (nsteps * dt));
  double worst = 0.0;
  for (Scheme s : {Scheme::IFRK4, Scheme::IFEuler}) {
    StepperConfig cfg;
    cfg.scheme = s;
    cfg.linear_only = true;
    Stepper st(g, p, cfg);
    SpectralField uh = st.work().fft().forward(u0);
    for (int i = 0; i < nsteps; ++i) st.step(uh, dt);
    RealField u = st.work().fft().inverse(uh);
    worst = std::max(worst, std::fabs(u.max_abs() / exact - 1.0));
  }
  return {worst <= 1e-10,
          fmt("linear amplitude error %.3e after %d steps, both schemes "
              "(tol 1e-10)",
              worst, nsteps)};
}

// 2. Both published forms of the right hand side agree on random data in
//    either parameter regime.
std::pair<bool, std::string> formulation_equivalence() {
  GridPtr g = Grid::create(3, 32, kTwoPi);
  Fourier fft(g);
  ModelWork w(g);
  PhysicalParams plus = PhysicalParams::gompper_schick(1.0, 1.0, 1.0, 0.2);
  PhysicalParams minus = PhysicalParams::gompper_schick(1.0, -1.0, 1.0, 0.2);

  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    RealField u = random_band_field(g, 8, 0.0, 0.75,
                                    1000 + static_cast<std::uint64_t>(i), fft);
    worst = std::max(worst, formulation_residual(u, plus, w));
    worst = std::max(worst, formulation_residual(u, minus, w));
  }
  return {worst <= 1e-10,
          fmt("max relative residual %.3e over 100 fields x 2 regimes "
              "(tol 1e-10)",
              worst)};
}

// 3. The conserved flux form keeps the mean exactly.
std::pair<bool, std::string> mass_conservation() {
  GridPtr g = Grid::create(3, 16, kTwoPi);
  Fourier fft(g);
  RealField u0 = random_band_field(g, 3, 0.0, 0.1, 77, fft);
  for (double& s : u0.v) s += 0.05;  // nonzero mean makes the check honest

  PhysicalParams p = PhysicalParams::gompper_schick(1.0, 1.0, 1.0, 0.2);
  StepperConfig cfg;
  cfg.dt = 1e-3;
  Stepper st(g, p, cfg);
  SpectralField uh = st.work().fft().forward(u0);
  const double v = g->volume();
  const double mass0 = v * uh.c[0].real();
  double drift = 0.0;
  for (int i = 0; i < 10000; ++i) {
    st.step(uh, 1e-3);
    if ((i + 1) % 1000 == 0)
      drift = std::max(drift, std::fabs(v * uh.c[0].real() - mass0));
  }
  drift = std::max(drift, std::fabs(v * uh.c[0].real() - mass0));
  return {drift <= 1e-13,
          fmt("mass drift %.3e over 10000 steps (tol 1e-13)", drift)};
}

// 4. mu is the variational derivative of F: central differences converge at
//    second order in the probe size.
std::pair<bool, std::string> variational_consistency() {
  GridPtr g = Grid::create(1, 64, kTwoPi);
  ModelWork w(g);
  // keep |F| small so the eps=1e-5 difference stays above the roundoff of
  // free_energy, and pick a direction whose cubic pairing does not vanish
  RealField u = RealField::from_function(
      g, [](const std::array<double, 3>& x) { return 0.2 * std::sin(x[0]); });
  RealField dir = RealField::from_function(g, [](const std::array<double, 3>& x) {
    return 1.5 * (std::sin(x[0]) + 0.6 * std::cos(2.0 * x[0]));
  });

  const std::vector<double> eps = {1e-3, 1e-4, 1e-5};
  bool pass = true;
  std::string detail;
  for (double g0 : {1.0, -1.0}) {
    PhysicalParams p = PhysicalParams::gompper_schick(1.0, g0, 1.0, 0.2);
    RealField mu = chemical_potential(u, p, w);
    double pairing = 0.0;
    for (size_t i = 0; i < u.v.size(); ++i) pairing += mu.v[i] * dir.v[i];
    pairing *= g->cell_volume();

    std::vector<double> le, lx;
    for (double e : eps) {
      RealField up = u, um = u;
      for (size_t i = 0; i < u.v.size(); ++i) {
        up.v[i] += e * dir.v[i];
        um.v[i] -= e * dir.v[i];
      }
      double fd = (free_energy(up, p, w) - free_energy(um, p, w)) / (2.0 * e);
      le.push_back(std::log(std::max(std::fabs(fd - pairing), 1e-300)));
      lx.push_back(std::log(e));
    }
    double slope = lsq_slope(lx, le);
    pass = pass && std::fabs(slope - 2.0) <= 0.1;
    detail += fmt("%sg0=%+.0f slope %.3f", detail.empty() ? "" : ", ", g0,
                  slope);
  }
  return {pass, detail + " (want 2.0 +/- 0.1)"};
}

// 5 and 6 share one dissipative run at production shape.
struct SmallDataResult {
  bool ran = false;
  std::string error;
  double f0 = 0.0;
  double max_increment = 0.0;
  double max_mismatch = 0.0;
  double h2_initial = 0.0;
  double h2_sup = 0.0;
};

SmallDataResult small_data_run() {
  SmallDataResult out;
  GridPtr g = Grid::create(3, 64, 32.0 * M_PI);
  Fourier fft(g);
  InitialDataSpec spec;  // gaussian bump, width L/25
  spec.target_h2 = 1e-2;
  InitialData id = generate_initial_data(spec, g, 12345, fft);

  PhysicalParams p = PhysicalParams::gompper_schick(1.0, 1.0, 1.0, 0.2);
  StepperConfig scfg;  // auto dt
  EvolveOptions opts;
  opts.t_end = 100.0;
  opts.cadence = 0.5;
  opts.request.max_grad_order = 2;
  opts.request.with_energy = true;

  EvolveResult r = evolve(id.u, p, scfg, opts);
  if (r.blew_up) {
    out.error = "run blew up: " + r.message;
    return out;
  }
  out.ran = true;
  out.f0 = r.records.front().free_energy;
  for (size_t i = 0; i + 1 < r.records.size(); ++i)
    out.max_increment = std::max(
        out.max_increment,
        r.records[i + 1].free_energy - r.records[i].free_energy);
  DissipationReport rep = dissipation_check(r.records, p.mobility);
  out.max_mismatch = rep.max_rel_mismatch;
  out.h2_initial = r.records.front().h2;
  for (const DiagnosticsRecord& rec : r.records)
    out.h2_sup = std::max(out.h2_sup, rec.h2);
  return out;
}

// 7. Decay exponents at 64^3 against the fourth-order heat baseline.
std::pair<bool, std::string> decay_exponents() {
  KeyValues kv = KeyValues::from_string(
      "scenario = decay3d\n"
      "out = acc_decay3d\n"
      "grid.dim = 3\n"
      "grid.n = 64\n"
      "grid.length = 100.53096491487338\n"
      "init.family = gaussian\n"
      "init.amplitude = 1e-2\n"
      // the fitted rate approaches the predicted quarter power only once
      // the window reaches far beyond the pre-asymptotic plateau
      "run.t_end = 6000\n"
      "run.cadence = 1\n"
      "diag.max_grad_order = 1\n");
  RunConfig cfg = RunConfig::from_kv(kv);
  ScenarioResult res = run_scenario(cfg);
  auto value = [&](const std::string& key) {
    for (const auto& [k, v] : res.summary)
      if (k == key) return v;
    return std::string("?");
  };
  std::string detail = fmt(
      "sigma0 %s vs baseline %s (tol 0.05), sigma1 %s (spacing 0.25 +/- "
      "0.10), predicted %s (tol 25%%)",
      value("sigma0").c_str(), value("sigma0_baseline").c_str(),
      value("sigma1").c_str(), value("sigma0_predicted").c_str());
  return {res.exit_code == 0 && res.checks_passed, detail};
}

// 8. The linearized fixed-point iteration contracts on small data.
std::pair<bool, std::string> picard_contraction() {
  GridPtr g = Grid::create(3, 32, 32.0 * M_PI);
  Fourier fft(g);
  InitialDataSpec spec;
  spec.target_h2 = 1e-2;
  InitialData id = generate_initial_data(spec, g, 12345, fft);
  PhysicalParams p = PhysicalParams::gompper_schick(1.0, 1.0, 1.0, 0.2);

  PicardConfig cfg;
  cfg.t1 = 0.1;
  cfg.jmax = 6;
  cfg.inner_steps = 128;
  PicardResult r = picard_local_solve(id.u, p, cfg);

  double lambda_max = 0.0;
  for (double x : r.ratios) lambda_max = std::max(lambda_max, x);
  bool pass = r.contraction && !r.degenerate && !r.ratios.empty() &&
              lambda_max < 1.0;
  return {pass, fmt("%zu contraction factors, all below 1: max %.3e%s",
                    r.ratios.size(), lambda_max,
                    r.degenerate ? " (degenerate)" : "")};
}

// 9. The interpolation inequality holds with constant 1 on random data.
std::pair<bool, std::string> interpolation_bound() {
  GridPtr g = Grid::create(3, 16, kTwoPi);
  Fourier fft(g);
  const std::vector<std::array<double, 3>> triples = {
      {1.0, 1.0, 0.5}, {2.0, 1.0, 0.0}, {1.0, 2.0, 0.5}};
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    RealField u = random_band_field(g, 4, 0.0, 1.0,
                                    500 + static_cast<std::uint64_t>(i), fft);
    for (const auto& t : triples) {
      InequalityCase c = make_interpolation(t[0], t[1], t[2]);
      worst = std::max(worst, check(c, u, nullptr, fft));
    }
  }
  return {worst <= 1.0 + 1e-10,
          fmt("max ratio %.12f over 100 fields x 3 exponent triples "
              "(bound 1 + 1e-10)",
              worst)};
}

// 10. Self-convergence orders of the two schemes against a fine reference.
// The box is long enough that h*L(k) stays small for every retained mode;
// otherwise the exact integrating factor hides the classical orders.
std::pair<bool, std::string> convergence_orders() {
  GridPtr g = Grid::create(1, 32, 8.0 * kTwoPi);
  Fourier fft(g);
  RealField u0 = random_band_field(g, 4, 0.0, 0.4, 21, fft);
  PhysicalParams p = PhysicalParams::gompper_schick(1.0, 1.0, 1.0, 0.2);
  const double t_end = 1.0;

  auto advance = [&](Scheme s, int nsteps) {
    StepperConfig cfg;
    cfg.scheme = s;
    Stepper st(g, p, cfg);
    SpectralField uh = st.work().fft().forward(u0);
    if (cfg.dealias) dealias(uh);
    const double h = t_end / nsteps;
    for (int i = 0; i < nsteps; ++i) st.step(uh, h);
    return st.work().fft().inverse(uh);
  };

  RealField ref = advance(Scheme::IFRK4, 8192);

  auto order_of = [&](Scheme s, std::vector<int> steps) {
    std::vector<double> lh, le;
    for (int n : steps) {
      lh.push_back(std::log(t_end / n));
      le.push_back(std::log(rel_max_diff(advance(s, n), ref)));
    }
    return lsq_slope(lh, le);
  };

  double p4 = order_of(Scheme::IFRK4, {8, 16, 32});
  double p1 = order_of(Scheme::IFEuler, {64, 128, 256});
  bool pass = std::fabs(p4 - 4.0) <= 0.3 && std::fabs(p1 - 1.0) <= 0.2;
  return {pass, fmt("ifrk4 order %.3f (want 4.0 +/- 0.3), ifeuler order %.3f "
                    "(want 1.0 +/- 0.2)",
                    p4, p1)};
}

}  // namespace

int main() {
  criterion(1, linear_oracle);
  criterion(2, formulation_equivalence);
  criterion(3, mass_conservation);
  criterion(4, variational_consistency);

  SmallDataResult sd;
  try {
    sd = small_data_run();
  } catch (const std::exception& e) {
    sd.error = std::string("unexpected exception: ") + e.what();
  }
  if (sd.ran) {
    report(5, sd.max_increment <= 1e-8 * sd.f0 && sd.max_mismatch <= 0.05,
           fmt("max energy increment %.3e vs budget %.3e, dissipation "
               "mismatch %.3f (tol 0.05)",
               sd.max_increment, 1e-8 * sd.f0, sd.max_mismatch));
    report(6, sd.h2_sup <= 2e-2,
           fmt("sup H2 %.6e from initial %.6e (bound 2e-2)", sd.h2_sup,
               sd.h2_initial));
  } else {
    report(5, false, sd.error);
    report(6, false, sd.error);
  }

  criterion(7, decay_exponents);
  criterion(8, picard_contraction);
  criterion(9, interpolation_bound);
  criterion(10, convergence_orders);

  return g_failures;
}

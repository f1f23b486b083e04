#include "scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>

#include "common.hpp"
#include "diagnostics.hpp"
#include "grid.hpp"
#include "inequality.hpp"
#include "initial_data.hpp"
#include "picard.hpp"
#include "random_field.hpp"
#include "snapshot.hpp"
#include "spectral_ops.hpp"
#include "stepper.hpp"

namespace ch6 {

namespace {

namespace fs = std::filesystem;

// Pinned check thresholds.  These are contract values, not tunables.
constexpr double kMassDriftTol = 1e-13;
constexpr double kEnergyIncrementRel = 1e-8;
constexpr double kDissipationRelTol = 0.05;
constexpr double kH2GrowthFactor = 2.0;
constexpr double kDecayBaseTol = 0.05;
constexpr double kDecaySpacing = 0.25;
constexpr double kDecaySpacingTol = 0.10;
constexpr double kDecayPredictedRelTol = 0.25;
constexpr double kInterpolationSlack = 1e-10;

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

class Summary {
public:
  void add(const std::string& key, const std::string& v) { kv_.emplace_back(key, v); }
  void add(const std::string& key, double v) { add(key, fmt(v)); }
  void add(const std::string& key, int v) { add(key, std::to_string(v)); }
  void add(const std::string& key, bool v) { add(key, std::string(v ? "true" : "false")); }
  const std::vector<std::pair<std::string, std::string>>& items() const { return kv_; }

private:
  std::vector<std::pair<std::string, std::string>> kv_;
};

void write_text_atomic(const fs::path& path, const std::string& text) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + tmp.string() + "' for writing");
    out << text;
    if (!out) throw IoError("short write to '" + tmp.string() + "'");
  }
  fs::rename(tmp, path);
}

void write_summary(const fs::path& dir, const Summary& s) {
  std::string text;
  for (const auto& [k, v] : s.items()) text += k + " = " + v + "\n";
  write_text_atomic(dir / "summary.txt", text);
}

fs::path prepare_out_dir(const RunConfig& cfg) {
  fs::path dir(cfg.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec && !fs::is_directory(dir))
    throw IoError("cannot create output directory '" + dir.string() + "': " + ec.message());
  write_text_atomic(dir / "config_resolved.cfg", cfg.resolved_text());
  return dir;
}

std::vector<double> make_ticks(double t_end, double cadence) {
  std::vector<double> ticks{0.0};
  for (int i = 1;; ++i) {
    double t = i * cadence;
    if (t >= t_end - 1e-12 * t_end) break;
    ticks.push_back(t);
  }
  ticks.push_back(t_end);
  return ticks;
}

// -------------------------------------------------------------- equivalence

ScenarioResult run_equivalence(const RunConfig& cfg, const fs::path& dir) {
  if (cfg.params.potential != PotentialKind::GompperSchick)
    throw ConfigError("the equivalence scenario requires model.potential = gompper_schick");

  GridPtr grid = Grid::create(cfg.dim, cfg.n, cfg.length);
  int band = cfg.equiv_kmax > 0 ? cfg.equiv_kmax : grid->dealias_limit();
  band = std::max(1, std::min(band, cfg.n / 2 - 1));

  const PhysicalParams& pa = cfg.params;
  // Companion parameter set from the other sign regime of the splitting.
  double g0b = pa.g0 > 0.0 ? -pa.g0 : 1.0 - pa.g0;
  PhysicalParams pb =
      PhysicalParams::gompper_schick(pa.delta, g0b, pa.g2, pa.h0, pa.mobility);

  ModelWork work(grid, cfg.step.oversample);
  std::ofstream csv(dir / "residuals.csv", std::ios::trunc);
  if (!csv) throw IoError("cannot open residuals.csv for writing");
  csv << "sample,g0,residual\n";

  double max_a = 0.0, max_b = 0.0;
  for (int i = 0; i < cfg.equiv_samples; ++i) {
    RealField u = random_band_field(grid, band, -1.0, cfg.equiv_amplitude,
                                    cfg.seed + static_cast<std::uint64_t>(i), work.fft());
    double ra = formulation_residual(u, pa, work);
    double rb = formulation_residual(u, pb, work);
    max_a = std::max(max_a, ra);
    max_b = std::max(max_b, rb);
    csv << i << "," << fmt(pa.g0) << "," << fmt(ra) << "\n";
    csv << i << "," << fmt(pb.g0) << "," << fmt(rb) << "\n";
  }

  bool pass = std::isfinite(max_a) && std::isfinite(max_b) &&
              max_a <= cfg.equiv_tol && max_b <= cfg.equiv_tol;

  ScenarioResult res;
  Summary s;
  s.add("scenario", std::string("equivalence"));
  s.add("samples", cfg.equiv_samples);
  s.add("band", band);
  s.add("g0_a", pa.g0);
  s.add("g0_b", pb.g0);
  s.add("kappa_a", fmt(pa.kappa0) + " " + fmt(pa.kappa1) + " " + fmt(pa.kappa2));
  s.add("kappa_b", fmt(pb.kappa0) + " " + fmt(pb.kappa1) + " " + fmt(pb.kappa2));
  s.add("max_residual_a", max_a);
  s.add("max_residual_b", max_b);
  s.add("tolerance", cfg.equiv_tol);
  s.add("pass", pass);
  res.summary = s.items();
  res.checks_passed = pass;
  res.exit_code = pass ? 0 : 1;
  write_summary(dir, s);
  return res;
}

// ------------------------------------------------------ evolving scenarios

struct EvolvedRun {
  EvolveResult ev;
  SpectralField u0_hat;
  RealField u0;
  double spectral_slope = std::numeric_limits<double>::quiet_NaN();
};

EvolvedRun evolve_scenario(const RunConfig& cfg, const fs::path& dir, ModelWork& work) {
  GridPtr grid = work.grid();
  InitialData init = generate_initial_data(cfg.init, grid, cfg.seed, work.fft());

  write_snapshot(init.u, (dir / "u_initial.ch6f").string());

  EvolveOptions opts;
  opts.t_end = cfg.t_end;
  opts.cadence = cfg.cadence;
  opts.request = cfg.diag;

  int snap_index = 0;
  std::function<void(double, const RealField&)> on_snapshot;
  if (cfg.snapshots) {
    on_snapshot = [&](double /*t*/, const RealField& u) {
      char name[32];
      std::snprintf(name, sizeof name, "snapshot_%04d.ch6f", snap_index++);
      write_snapshot(u, (dir / name).string());
    };
  }

  EvolvedRun run{evolve(init.u, cfg.params, cfg.step, opts, {}, on_snapshot),
                 work.fft().forward(init.u), std::move(init.u), init.spectral_slope};
  if (cfg.step.dealias) dealias(run.u0_hat);

  write_csv((dir / "diagnostics.csv").string(), run.ev.records);
  if (run.ev.final_state.grid) write_snapshot(run.ev.final_state, (dir / "u_final.ch6f").string());
  return run;
}

ScenarioResult run_smalldata(const RunConfig& cfg, const fs::path& dir) {
  GridPtr grid = Grid::create(cfg.dim, cfg.n, cfg.length);
  ModelWork work(grid, cfg.step.oversample);
  EvolvedRun run = evolve_scenario(cfg, dir, work);
  const auto& rec = run.ev.records;

  ScenarioResult res;
  Summary s;
  s.add("scenario", std::string("smalldata"));
  s.add("dt_used", run.ev.dt_used);
  s.add("records", static_cast<int>(rec.size()));
  s.add("blow_up", run.ev.blew_up);
  if (run.ev.blew_up) {
    s.add("blowup_time", run.ev.blowup_time);
    s.add("message", run.ev.message);
    s.add("pass", false);
    res.summary = s.items();
    res.message = run.ev.message;
    res.exit_code = 3;
    write_summary(dir, s);
    return res;
  }

  double h2_0 = rec.front().h2;
  double h2_sup = 0.0, mass_drift = 0.0, max_inc = 0.0;
  for (const auto& r : rec) {
    h2_sup = std::max(h2_sup, r.h2);
    mass_drift = std::max(mass_drift, std::abs(r.mass - rec.front().mass));
  }
  for (std::size_t i = 1; i < rec.size(); ++i)
    max_inc = std::max(max_inc, rec[i].free_energy - rec[i - 1].free_energy);

  DissipationReport diss = dissipation_check(rec, cfg.params.mobility);
  NegativeNormReport neg = negative_norm_monitor(rec);

  double f0 = rec.front().free_energy;
  bool pass_h2 = h2_sup <= kH2GrowthFactor * h2_0;
  bool pass_mass = mass_drift <= kMassDriftTol * std::max(1.0, std::abs(rec.front().mass));
  bool pass_energy = max_inc <= kEnergyIncrementRel * std::max(std::abs(f0), 1e-300);
  bool pass_diss = diss.max_rel_mismatch <= kDissipationRelTol;
  bool pass_neg = !neg.growth_flag;
  bool pass = pass_h2 && pass_mass && pass_energy && pass_diss && pass_neg;

  s.add("h2_initial", h2_0);
  s.add("h2_sup", h2_sup);
  s.add("h2_final", rec.back().h2);
  s.add("mass_initial", rec.front().mass);
  s.add("mass_drift", mass_drift);
  s.add("f_initial", f0);
  s.add("f_final", rec.back().free_energy);
  s.add("f_max_increment", max_inc);
  s.add("diss_max_rel", diss.max_rel_mismatch);
  s.add("diss_median_rel", diss.median_rel_mismatch);
  s.add("neg_initial", neg.initial);
  s.add("neg_final", neg.final);
  s.add("neg_sup", neg.sup);
  s.add("neg_growth_flag", neg.growth_flag);
  s.add("pass_h2_bound", pass_h2);
  s.add("pass_mass", pass_mass);
  s.add("pass_energy_monotone", pass_energy);
  s.add("pass_dissipation_identity", pass_diss);
  s.add("pass_negative_norm", pass_neg);
  s.add("pass", pass);

  res.summary = s.items();
  res.checks_passed = pass;
  res.exit_code = pass ? 0 : 1;
  write_summary(dir, s);
  return res;
}

void append_fit_row(std::string& csv, const std::string& series, int l, const DecayFit& f) {
  csv += series + "," + std::to_string(l) + "," + fmt(f.t1) + "," + fmt(f.t2) + "," +
         fmt(f.sigma_hat) + "," + fmt(f.r2) + "," + std::to_string(f.samples) + "\n";
}

std::vector<double> column_grad(const std::vector<DiagnosticsRecord>& rec, int l) {
  std::vector<double> v;
  v.reserve(rec.size());
  for (const auto& r : rec) v.push_back(r.grad_l2.at(static_cast<std::size_t>(l)));
  return v;
}

std::vector<double> column_t(const std::vector<DiagnosticsRecord>& rec) {
  std::vector<double> v;
  v.reserve(rec.size());
  for (const auto& r : rec) v.push_back(r.t);
  return v;
}

ScenarioResult run_decay3d(const RunConfig& cfg, const fs::path& dir) {
  if (cfg.dim != 3)
    throw ConfigError("the decay3d scenario requires grid.dim = 3");
  if (cfg.diag.max_grad_order < 1)
    throw ConfigError("the decay3d scenario requires diag.max_grad_order >= 1");
  if (cfg.init.family != InitFamily::Gaussian && cfg.init.family != InitFamily::BandRandom)
    throw ConfigError(
        "the decay3d scenario needs initial data with a known spectral envelope "
        "(init.family = gaussian or band_random)");

  GridPtr grid = Grid::create(cfg.dim, cfg.n, cfg.length);
  ModelWork work(grid, cfg.step.oversample);
  EvolvedRun run = evolve_scenario(cfg, dir, work);

  ScenarioResult res;
  Summary s;
  s.add("scenario", std::string("decay3d"));
  s.add("dt_used", run.ev.dt_used);
  s.add("records", static_cast<int>(run.ev.records.size()));
  s.add("blow_up", run.ev.blew_up);
  if (run.ev.blew_up) {
    s.add("blowup_time", run.ev.blowup_time);
    s.add("message", run.ev.message);
    s.add("pass", false);
    res.summary = s.items();
    res.message = run.ev.message;
    res.exit_code = 3;
    write_summary(dir, s);
    return res;
  }

  // Heat baseline sampled at the same times as the run records.
  std::vector<DiagnosticsRecord> base;
  base.reserve(run.ev.records.size());
  for (const auto& r : run.ev.records)
    base.push_back(heat_baseline(run.u0_hat, r.t, cfg.params, cfg.diag, work));
  write_csv((dir / "baseline.csv").string(), base);

  double t1 = 0.0, t2 = 0.0;
  decay_window(cfg.cadence, cfg.length, cfg.params.kappa0, &t1, &t2);
  t2 = std::min(t2, cfg.t_end);

  std::vector<double> tt = column_t(run.ev.records);
  DecayFit run0 = fit_decay(tt, column_grad(run.ev.records, 0), t1, t2);
  DecayFit run1 = fit_decay(tt, column_grad(run.ev.records, 1), t1, t2);
  DecayFit base0 = fit_decay(tt, column_grad(base, 0), t1, t2);
  DecayFit base1 = fit_decay(tt, column_grad(base, 1), t1, t2);

  std::string fits = "series,l,t1,t2,sigma_hat,r2,samples\n";
  append_fit_row(fits, "run", 0, run0);
  append_fit_row(fits, "run", 1, run1);
  append_fit_row(fits, "baseline", 0, base0);
  append_fit_row(fits, "baseline", 1, base1);
  write_text_atomic(dir / "fits.csv", fits);

  double s_star = run.spectral_slope + 1.5;
  double pred0 = predicted_sigma_hs(0, s_star);
  double pred1 = predicted_sigma_hs(1, s_star);

  bool pass_base = std::abs(run0.sigma_hat - base0.sigma_hat) <= kDecayBaseTol;
  bool pass_spacing =
      std::abs((run1.sigma_hat - run0.sigma_hat) - kDecaySpacing) <= kDecaySpacingTol;
  bool pass_pred = std::abs(run0.sigma_hat - pred0) <= kDecayPredictedRelTol * pred0;
  bool pass = pass_base && pass_spacing && pass_pred;

  s.add("window_t1", t1);
  s.add("window_t2", t2);
  s.add("fit_samples", run0.samples);
  s.add("sigma0", run0.sigma_hat);
  s.add("sigma1", run1.sigma_hat);
  s.add("sigma0_baseline", base0.sigma_hat);
  s.add("sigma1_baseline", base1.sigma_hat);
  s.add("r2_sigma0", run0.r2);
  s.add("r2_sigma1", run1.r2);
  s.add("spectral_slope", run.spectral_slope);
  s.add("s_star", s_star);
  s.add("sigma0_predicted", pred0);
  s.add("sigma1_predicted", pred1);
  s.add("pass_baseline_match", pass_base);
  s.add("pass_order_spacing", pass_spacing);
  s.add("pass_predicted_rate", pass_pred);
  s.add("pass", pass);

  res.summary = s.items();
  res.checks_passed = pass;
  res.exit_code = pass ? 0 : 1;
  write_summary(dir, s);
  return res;
}

// -------------------------------------------------------------- contraction

ScenarioResult run_contraction(const RunConfig& cfg, const fs::path& dir) {
  GridPtr grid = Grid::create(cfg.dim, cfg.n, cfg.length);
  Fourier fft(grid);
  InitialData init = generate_initial_data(cfg.init, grid, cfg.seed, fft);
  write_snapshot(init.u, (dir / "u_initial.ch6f").string());

  PicardResult pr = picard_local_solve(init.u, cfg.params, cfg.picard);

  std::string csv = "j,sup_h2,diff_sup,ratio\n";
  for (std::size_t j = 0; j < pr.sup_h2.size(); ++j) {
    csv += std::to_string(j + 1) + "," + fmt(pr.sup_h2[j]) + "," + fmt(pr.diff_sup[j]) + ",";
    csv += j < pr.ratios.size() ? fmt(pr.ratios[j]) : std::string("nan");
    csv += "\n";
  }
  write_text_atomic(dir / "picard.csv", csv);
  if (pr.final_iterate.grid)
    write_snapshot(pr.final_iterate, (dir / "picard_final.ch6f").string());

  double lambda_max = 0.0;
  for (double l : pr.ratios) lambda_max = std::max(lambda_max, l);

  bool pass = pr.contraction;
  ScenarioResult res;
  Summary s;
  s.add("scenario", std::string("contraction"));
  s.add("t1", cfg.picard.t1);
  s.add("jmax", cfg.picard.jmax);
  s.add("inner_steps", cfg.picard.inner_steps);
  s.add("sup_h2_first", pr.sup_h2.empty() ? 0.0 : pr.sup_h2.front());
  s.add("sup_h2_last", pr.sup_h2.empty() ? 0.0 : pr.sup_h2.back());
  s.add("lambda_max", lambda_max);
  s.add("ratios_measured", static_cast<int>(pr.ratios.size()));
  s.add("contraction", pr.contraction);
  s.add("degenerate", pr.degenerate);
  if (!pr.message.empty()) s.add("message", pr.message);
  s.add("pass", pass);

  res.summary = s.items();
  res.checks_passed = pass;
  res.message = pr.message;
  res.exit_code = pass ? 0 : 1;
  write_summary(dir, s);
  return res;
}

// ------------------------------------------------------------- inequalities

ScenarioResult run_inequalities(const RunConfig& cfg, const fs::path& dir) {
  std::vector<std::string> kinds =
      cfg.ineq_kinds.empty() ? RunConfig::known_ineq_kinds() : cfg.ineq_kinds;

  bool needs_3d = false;
  for (const auto& k : kinds)
    if (k == "gagliardo_nirenberg" || k == "homogeneous_embedding" || k == "agmon" ||
        k == "hardy_littlewood_sobolev")
      needs_3d = true;
  if (needs_3d && cfg.dim != 3)
    throw ConfigError("the requested inequality kinds require grid.dim = 3");

  std::vector<InequalityCase> cases;
  for (const auto& k : kinds) {
    if (k == "kato_ponce_commutator") cases.push_back(make_kato_ponce_commutator(2.0));
    else if (k == "kato_ponce_product") cases.push_back(make_kato_ponce_product(2.0));
    else if (k == "gagliardo_nirenberg")
      cases.push_back(make_gagliardo_nirenberg(1.0, 2.0, 0.5, 2.0, 2.0, 2.0));
    else if (k == "homogeneous_embedding") cases.push_back(make_homogeneous_embedding(1.0));
    else if (k == "agmon") cases.push_back(make_agmon());
    else if (k == "hardy_littlewood_sobolev") cases.push_back(make_hls(0.5));
    else {
      cases.push_back(make_interpolation(1.0, 1.0, 0.5));
      cases.push_back(make_interpolation(2.0, 1.0, 0.0));
      cases.push_back(make_interpolation(1.0, 2.0, 0.5));
    }
  }

  GridPtr grid = Grid::create(cfg.dim, cfg.n, cfg.length);
  std::string csv = "kind,params,param_hash,samples,seed,band,slope,max_ratio,mean_ratio\n";
  bool pass = true;
  double interp_max = 0.0;
  bool have_interp = false;
  for (const auto& c : cases) {
    CalibrationReport rep =
        calibrate(c, grid, cfg.ineq_samples, cfg.seed, cfg.ineq_band, cfg.ineq_slope);
    csv += c.name() + ",\"" + c.param_text() + "\"," + c.param_hash() + "," +
           std::to_string(rep.samples) + "," + std::to_string(rep.seed) + "," +
           std::to_string(cfg.ineq_band) + "," + fmt(cfg.ineq_slope) + "," +
           fmt(rep.max_ratio) + "," + fmt(rep.mean_ratio) + "\n";
    if (!std::isfinite(rep.max_ratio) || rep.max_ratio <= 0.0) pass = false;
    if (c.kind == IneqKind::Interpolation) {
      have_interp = true;
      interp_max = std::max(interp_max, rep.max_ratio);
      if (rep.max_ratio > 1.0 + kInterpolationSlack) pass = false;
    }
  }
  write_text_atomic(dir / "ineq_report.csv", csv);

  ScenarioResult res;
  Summary s;
  s.add("scenario", std::string("inequalities"));
  s.add("cases", static_cast<int>(cases.size()));
  s.add("samples_per_case", cfg.ineq_samples);
  s.add("band", cfg.ineq_band);
  s.add("slope", cfg.ineq_slope);
  if (have_interp) {
    s.add("interpolation_max_ratio", interp_max);
    s.add("interpolation_bound", 1.0 + kInterpolationSlack);
  }
  s.add("pass", pass);

  res.summary = s.items();
  res.checks_passed = pass;
  res.exit_code = pass ? 0 : 1;
  write_summary(dir, s);
  return res;
}

// ----------------------------------------------------------------- baseline

ScenarioResult run_baseline(const RunConfig& cfg, const fs::path& dir) {
  if (cfg.dim != 3)
    throw ConfigError("the baseline scenario requires grid.dim = 3");
  if (cfg.init.family != InitFamily::Gaussian && cfg.init.family != InitFamily::BandRandom)
    throw ConfigError(
        "the baseline scenario needs initial data with a known spectral envelope "
        "(init.family = gaussian or band_random)");

  GridPtr grid = Grid::create(cfg.dim, cfg.n, cfg.length);
  ModelWork work(grid, false);
  InitialData init = generate_initial_data(cfg.init, grid, cfg.seed, work.fft());
  write_snapshot(init.u, (dir / "u_initial.ch6f").string());

  SpectralField u0_hat = work.fft().forward(init.u);
  if (cfg.step.dealias) dealias(u0_hat);

  std::vector<DiagnosticsRecord> rec;
  for (double t : make_ticks(cfg.t_end, cfg.cadence))
    rec.push_back(heat_baseline(u0_hat, t, cfg.params, cfg.diag, work));
  write_csv((dir / "baseline.csv").string(), rec);

  RealField u_final = work.fft().inverse(heat_baseline_hat(u0_hat, cfg.t_end));
  write_snapshot(u_final, (dir / "u_final.ch6f").string());

  double t1 = 0.0, t2 = 0.0;
  decay_window(cfg.cadence, cfg.length, 1.0, &t1, &t2);
  t2 = std::min(t2, cfg.t_end);

  std::vector<double> tt = column_t(rec);
  DecayFit fit0 = fit_decay(tt, column_grad(rec, 0), t1, t2);
  std::string fits = "series,l,t1,t2,sigma_hat,r2,samples\n";
  append_fit_row(fits, "baseline", 0, fit0);
  DecayFit fit1;
  if (cfg.diag.max_grad_order >= 1) {
    fit1 = fit_decay(tt, column_grad(rec, 1), t1, t2);
    append_fit_row(fits, "baseline", 1, fit1);
  }
  write_text_atomic(dir / "fits.csv", fits);

  double s_star = init.spectral_slope + 1.5;
  double pred0 = predicted_sigma_hs(0, s_star);
  bool pass = std::abs(fit0.sigma_hat - pred0) <= kDecayPredictedRelTol * pred0;

  ScenarioResult res;
  Summary s;
  s.add("scenario", std::string("baseline"));
  s.add("window_t1", t1);
  s.add("window_t2", t2);
  s.add("fit_samples", fit0.samples);
  s.add("sigma0", fit0.sigma_hat);
  s.add("r2_sigma0", fit0.r2);
  if (cfg.diag.max_grad_order >= 1) s.add("sigma1", fit1.sigma_hat);
  s.add("spectral_slope", init.spectral_slope);
  s.add("s_star", s_star);
  s.add("sigma0_predicted", pred0);
  s.add("pass", pass);

  res.summary = s.items();
  res.checks_passed = pass;
  res.exit_code = pass ? 0 : 1;
  write_summary(dir, s);
  return res;
}

}  // namespace

ScenarioResult run_scenario(const RunConfig& cfg) {
  fs::path dir = prepare_out_dir(cfg);
  if (cfg.scenario == "equivalence") return run_equivalence(cfg, dir);
  if (cfg.scenario == "smalldata") return run_smalldata(cfg, dir);
  if (cfg.scenario == "decay3d") return run_decay3d(cfg, dir);
  if (cfg.scenario == "contraction") return run_contraction(cfg, dir);
  if (cfg.scenario == "inequalities") return run_inequalities(cfg, dir);
  if (cfg.scenario == "baseline") return run_baseline(cfg, dir);
  throw ConfigError("unknown scenario '" + cfg.scenario + "'");
}

}  // namespace ch6

#pragma once

#include <string>
#include <vector>

#include "model.hpp"

namespace ch6 {

struct DiagnosticsRequest {
  int max_grad_order = 3;   // gradL2_0 .. gradL2_N columns
  double neg_s = 0.5;       // order of the negative-norm monitor
  ZeroModePolicy neg_policy = ZeroModePolicy::Project;
  bool with_energy = true;  // free energy and ||grad mu|| (extra transforms)
};

struct DiagnosticsRecord {
  double t = 0.0;
  double mass = 0.0;        // integral of u
  double l2 = 0.0;
  double h2 = 0.0;          // inhomogeneous H^2
  std::vector<double> grad_l2;  // ||grad^l u||_{L2}, l = 0..max_grad_order
  double neg_s = 0.0;       // homogeneous H^{-s} norm of the mean-free part
  double free_energy = 0.0;
  double mu_grad = 0.0;     // ||grad mu||_{L2}
};

// One diagnostics row.  All norms come from a single pass over the spectrum;
// the energy pair costs extra model assemblies when requested.
DiagnosticsRecord record(const SpectralField& u_hat, double t, const PhysicalParams& p,
                         const DiagnosticsRequest& req, ModelWork& w);
DiagnosticsRecord record(const RealField& u, double t, const PhysicalParams& p,
                         const DiagnosticsRequest& req, ModelWork& w);

// Sum of squared derivative norms, orders l..m inclusive.
double energy_chain(const DiagnosticsRecord& r, int l, int m);

struct DissipationReport {
  double f_initial = 0.0;
  double max_increment = 0.0;    // largest F(t_{i+1}) - F(t_i)
  double max_rel_mismatch = 0.0; // |dF/dt + M ||grad mu||^2| vs the rate scale
  double median_rel_mismatch = 0.0;
  int samples = 0;
};

// Central-difference dF/dt against -M ||grad mu||^2 at interior records.
// Mismatches are measured relative to max(|rate_i|, 1e-3 * peak rate) so the
// late tail, where both sides vanish, cannot dominate.
DissipationReport dissipation_check(const std::vector<DiagnosticsRecord>& records,
                                    double mobility);

struct DecayFit {
  double t1 = 0.0, t2 = 0.0;
  double sigma_hat = 0.0;  // power of (1+t) in value ~ (1+t)^{-sigma}
  double r2 = 0.0;
  int samples = 0;
};

// Least-squares slope of log(value) against log(1+t) on t in [t1, t2].
// Requires at least 8 samples in the window and positive values.
DecayFit fit_decay(const std::vector<double>& t, const std::vector<double>& value,
                   double t1, double t2);

// Fit window rule: [10 * cadence, 0.1 * (L / 2 pi)^4 / kappa0].
void decay_window(double cadence, double box_length, double kappa0,
                  double* t1, double* t2);

// Predicted decay exponents for ||grad^l u||_{L2}.
double predicted_sigma_hs(int l, double s);           // (l + s) / 4
double predicted_sigma_lp(int l, double p);           // 3/4 (1/p - 1/2) + l/4

// Fourth-order heat flow u_t + lap^2 u = 0 of the same initial spectrum:
// the comparison baseline for decay exponents.
SpectralField heat_baseline_hat(const SpectralField& u0_hat, double t);
DiagnosticsRecord heat_baseline(const SpectralField& u0_hat, double t,
                                const PhysicalParams& p, const DiagnosticsRequest& req,
                                ModelWork& w);

struct NegativeNormReport {
  double initial = 0.0;
  double final = 0.0;
  double sup = 0.0;
  bool growth_flag = false;  // final > 2 * initial
};

NegativeNormReport negative_norm_monitor(const std::vector<DiagnosticsRecord>& records);

// CSV schema: t,mass,L2,H2,gradL2_0..gradL2_N,neg_s,free_energy,mu_grad
// with every value printed as %.17g.  record_values flattens a record in
// exactly that column order.
std::string csv_header(int max_grad_order);
std::vector<double> record_values(const DiagnosticsRecord& r);
void write_csv(const std::string& path, const std::vector<DiagnosticsRecord>& records);

struct CsvColumn {
  std::vector<double> t;
  std::vector<double> value;
};

CsvColumn read_csv_column(const std::string& path, const std::string& column);

}  // namespace ch6

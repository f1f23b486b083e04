#include "diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include "common.hpp"
#include "spectral_ops.hpp"

namespace ch6 {

DiagnosticsRecord record(const SpectralField& u_hat, double t, const PhysicalParams& p,
                         const DiagnosticsRequest& req, ModelWork& w) {
  if (req.max_grad_order < 0) throw DomainError("diag.max_grad_order must be >= 0");
  if (!(req.neg_s > 0.0)) throw DomainError("diag.neg_s must be positive");
  if (req.neg_policy == ZeroModePolicy::Strict && !is_mean_free(u_hat))
    throw DomainError("negative-norm monitor on a field with nonzero mean "
                      "(strict zero-mode policy)");

  const Grid& g = *u_hat.grid;
  DiagnosticsRecord r;
  r.t = t;
  r.mass = g.volume() * u_hat.c[0].real();
  r.grad_l2.assign(static_cast<std::size_t>(req.max_grad_order) + 1, 0.0);

  std::vector<long double> grad_acc(r.grad_l2.size(), 0.0L);
  long double h2_acc = 0.0L, neg_acc = 0.0L;
  for (std::size_t s = 0; s < g.spec_count(); ++s) {
    const double a = std::norm(u_hat.c[s]);
    if (a == 0.0) continue;
    const double wgt = g.hermitian_weight(s);
    const double q = g.ksq(s);
    const double wa = wgt * a;
    double qp = 1.0;
    for (std::size_t l = 0; l < grad_acc.size(); ++l) {
      grad_acc[l] += wa * qp;
      qp *= q;
    }
    h2_acc += wa * (1.0 + q) * (1.0 + q);
    if (q > 0.0) neg_acc += wa * std::pow(q, -req.neg_s);
  }
  const double vol = g.volume();
  for (std::size_t l = 0; l < grad_acc.size(); ++l)
    r.grad_l2[l] = std::sqrt(static_cast<double>(grad_acc[l]) * vol);
  r.l2 = r.grad_l2[0];
  r.h2 = std::sqrt(static_cast<double>(h2_acc) * vol);
  r.neg_s = std::sqrt(static_cast<double>(neg_acc) * vol);

  if (req.with_energy) {
    r.free_energy = free_energy_hat(u_hat, p, w);
    r.mu_grad = std::sqrt(mu_grad_sq(u_hat, p, w));
  }
  return r;
}

DiagnosticsRecord record(const RealField& u, double t, const PhysicalParams& p,
                         const DiagnosticsRequest& req, ModelWork& w) {
  return record(w.fft().forward(u), t, p, req, w);
}

double energy_chain(const DiagnosticsRecord& r, int l, int m) {
  if (l < 0 || m < l || m >= static_cast<int>(r.grad_l2.size()))
    throw DomainError("energy chain orders out of the recorded range");
  long double acc = 0.0L;
  for (int k = l; k <= m; ++k)
    acc += static_cast<long double>(r.grad_l2[static_cast<std::size_t>(k)]) *
           r.grad_l2[static_cast<std::size_t>(k)];
  return static_cast<double>(acc);
}

DissipationReport dissipation_check(const std::vector<DiagnosticsRecord>& records,
                                    double mobility) {
  if (records.size() < 3)
    throw DomainError("dissipation check needs at least three records");
  DissipationReport rep;
  rep.f_initial = records.front().free_energy;
  for (std::size_t i = 0; i + 1 < records.size(); ++i)
    rep.max_increment = std::max(rep.max_increment,
                                 records[i + 1].free_energy - records[i].free_energy);
  double peak = 0.0;
  for (const auto& r : records) peak = std::max(peak, mobility * r.mu_grad * r.mu_grad);
  std::vector<double> rels;
  for (std::size_t i = 1; i + 1 < records.size(); ++i) {
    const double dfdt = (records[i + 1].free_energy - records[i - 1].free_energy) /
                        (records[i + 1].t - records[i - 1].t);
    const double rate = -mobility * records[i].mu_grad * records[i].mu_grad;
    // symmetric scale, floored at a fraction of the peak rate so late-time
    // noise in both quantities does not masquerade as mismatch
    const double den =
        std::max({std::abs(dfdt), std::abs(rate), 1e-3 * peak});
    if (den == 0.0) continue;
    rels.push_back(std::abs(dfdt - rate) / den);
  }
  rep.samples = static_cast<int>(rels.size());
  if (!rels.empty()) {
    rep.max_rel_mismatch = *std::max_element(rels.begin(), rels.end());
    std::sort(rels.begin(), rels.end());
    rep.median_rel_mismatch = rels[rels.size() / 2];
  }
  return rep;
}

DecayFit fit_decay(const std::vector<double>& t, const std::vector<double>& value,
                   double t1, double t2) {
  if (t.size() != value.size()) throw DomainError("fit_decay: size mismatch");
  if (!(t2 > t1)) throw DomainError("fit_decay: window must satisfy t2 > t1");
  const double pad = 1e-9 * (t2 - t1);
  std::vector<double> x, y;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] < t1 - pad || t[i] > t2 + pad) continue;
    if (!(value[i] > 0.0))
      throw DomainError("fit_decay: values must be positive inside the window");
    x.push_back(std::log1p(t[i]));
    y.push_back(std::log(value[i]));
  }
  if (x.size() < 8)
    throw DomainError("fit_decay: need at least 8 samples in the window (got " +
                      std::to_string(x.size()) + ")");
  const std::size_t n = x.size();
  long double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
    sxx += static_cast<long double>(x[i]) * x[i];
    sxy += static_cast<long double>(x[i]) * y[i];
  }
  const long double det = n * sxx - sx * sx;
  const double slope = static_cast<double>((n * sxy - sx * sy) / det);
  const double intercept = static_cast<double>((sy - slope * sx) / n);
  long double ss_res = 0, ss_tot = 0;
  const double ybar = static_cast<double>(sy / n);
  for (std::size_t i = 0; i < n; ++i) {
    const double e = y[i] - (intercept + slope * x[i]);
    ss_res += static_cast<long double>(e) * e;
    ss_tot += static_cast<long double>(y[i] - ybar) * (y[i] - ybar);
  }
  DecayFit fit;
  fit.t1 = t1;
  fit.t2 = t2;
  fit.sigma_hat = -slope;
  fit.r2 = ss_tot > 0.0L ? static_cast<double>(1.0L - ss_res / ss_tot) : 1.0;
  fit.samples = static_cast<int>(n);
  return fit;
}

void decay_window(double cadence, double box_length, double kappa0,
                  double* t1, double* t2) {
  if (!(cadence > 0.0) || !(box_length > 0.0) || !(kappa0 > 0.0))
    throw DomainError("decay window needs positive cadence, length and kappa0");
  *t1 = 10.0 * cadence;
  const double r = box_length / (2.0 * std::numbers::pi);
  *t2 = 0.1 * r * r * r * r / kappa0;
}

double predicted_sigma_hs(int l, double s) { return (l + s) / 4.0; }

double predicted_sigma_lp(int l, double p) {
  if (!(p >= 1.0)) throw DomainError("predicted_sigma_lp requires p >= 1");
  return 0.75 * (1.0 / p - 0.5) + 0.25 * l;
}

SpectralField heat_baseline_hat(const SpectralField& u0_hat, double t) {
  SpectralField out = u0_hat;
  const Grid& g = *out.grid;
  for (std::size_t s = 0; s < g.spec_count(); ++s)
    out.c[s] *= std::exp(-g.ksq(s) * g.ksq(s) * t);
  return out;
}

DiagnosticsRecord heat_baseline(const SpectralField& u0_hat, double t,
                                const PhysicalParams& p, const DiagnosticsRequest& req,
                                ModelWork& w) {
  return record(heat_baseline_hat(u0_hat, t), t, p, req, w);
}

NegativeNormReport negative_norm_monitor(const std::vector<DiagnosticsRecord>& records) {
  if (records.empty()) throw DomainError("negative-norm monitor needs records");
  NegativeNormReport rep;
  rep.initial = records.front().neg_s;
  rep.final = records.back().neg_s;
  for (const auto& r : records) rep.sup = std::max(rep.sup, r.neg_s);
  rep.growth_flag = rep.final > 2.0 * rep.initial;
  return rep;
}

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string csv_header(int max_grad_order) {
  std::string h = "t,mass,L2,H2";
  for (int l = 0; l <= max_grad_order; ++l) h += ",gradL2_" + std::to_string(l);
  h += ",neg_s,free_energy,mu_grad";
  return h;
}

std::vector<double> record_values(const DiagnosticsRecord& r) {
  std::vector<double> v{r.t, r.mass, r.l2, r.h2};
  v.insert(v.end(), r.grad_l2.begin(), r.grad_l2.end());
  v.push_back(r.neg_s);
  v.push_back(r.free_energy);
  v.push_back(r.mu_grad);
  return v;
}

void write_csv(const std::string& path, const std::vector<DiagnosticsRecord>& records) {
  if (records.empty()) throw DomainError("write_csv: no records");
  std::ofstream os(path, std::ios::trunc);
  if (!os) throw IoError("cannot open '" + path + "' for writing");
  const int maxg = static_cast<int>(records.front().grad_l2.size()) - 1;
  os << csv_header(maxg) << "\n";
  for (const auto& r : records) {
    if (static_cast<int>(r.grad_l2.size()) - 1 != maxg)
      throw DomainError("write_csv: inconsistent gradient orders across records");
    std::string line;
    for (double x : record_values(r)) {
      if (!line.empty()) line += ',';
      line += fmt(x);
    }
    os << line << "\n";
  }
  if (!os) throw IoError("short write to '" + path + "'");
}

CsvColumn read_csv_column(const std::string& path, const std::string& column) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open '" + path + "' for reading");
  std::string line;
  if (!std::getline(is, line)) throw IoError("'" + path + "' is empty");
  std::vector<std::string> names;
  {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) names.push_back(cell);
  }
  std::size_t tcol = names.size(), vcol = names.size();
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == "t") tcol = i;
    if (names[i] == column) vcol = i;
  }
  if (tcol == names.size()) throw ConfigError("'" + path + "' has no 't' column");
  if (vcol == names.size())
    throw ConfigError("'" + path + "' has no column named '" + column + "'");
  CsvColumn out;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::size_t i = 0;
    double tv = 0.0, vv = 0.0;
    bool got_t = false, got_v = false;
    while (std::getline(ss, cell, ',')) {
      try {
        if (i == tcol) {
          tv = std::stod(cell);
          got_t = true;
        }
        if (i == vcol) {
          vv = std::stod(cell);
          got_v = true;
        }
      } catch (const std::exception&) {
        throw ConfigError("'" + path + "': cannot parse '" + cell + "' at line " +
                          std::to_string(lineno));
      }
      ++i;
    }
    if (!got_t || !got_v)
      throw ConfigError("'" + path + "': short row at line " + std::to_string(lineno));
    out.t.push_back(tv);
    out.value.push_back(vv);
  }
  return out;
}

}  // namespace ch6

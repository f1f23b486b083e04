#include "inequality.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "common.hpp"
#include "random_field.hpp"
#include "spectral_ops.hpp"

namespace ch6 {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double inv(double p) { return std::isinf(p) ? 0.0 : 1.0 / p; }

void require_lebesgue(double p, const char* what) {
  if (!(p >= 1.0))
    throw DomainError(std::string(what) + " must be a Lebesgue exponent >= 1");
}

// ||Lambda^alpha u||_{L^p}
double lam_lp(const SpectralField& uh, double alpha, double p, Fourier& fft) {
  SpectralField t = uh;
  apply_fractional(t, alpha);
  if (p == 2.0) return norm(t, NormSpec::sobolev(0.0));
  return lp_norm(fft.inverse(t), p);
}

double grad_linf(const SpectralField& uh, Fourier& fft) {
  const Grid& g = *uh.grid;
  std::vector<double> acc(g.point_count(), 0.0);
  for (int d = 0; d < g.dim(); ++d) {
    SpectralField t = uh;
    apply_derivative(t, d, 1);
    RealField comp = fft.inverse(t);
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += comp.v[i] * comp.v[i];
  }
  double mx = 0.0;
  for (double v : acc) mx = std::max(mx, v);
  return std::sqrt(mx);
}

double ratio_of(double lhs, double rhs) {
  if (rhs > 0.0) return lhs / rhs;
  return lhs == 0.0 ? 0.0 : kInf;
}

}  // namespace

std::string InequalityCase::name() const {
  switch (kind) {
    case IneqKind::KatoPonceCommutator: return "kato_ponce_commutator";
    case IneqKind::KatoPonceProduct: return "kato_ponce_product";
    case IneqKind::GagliardoNirenberg: return "gagliardo_nirenberg";
    case IneqKind::HomogeneousEmbedding: return "homogeneous_embedding";
    case IneqKind::Agmon: return "agmon";
    case IneqKind::HardyLittlewoodSobolev: return "hardy_littlewood_sobolev";
    case IneqKind::Interpolation: return "interpolation";
  }
  return "unknown";
}

std::string InequalityCase::param_text() const {
  char buf[160];
  switch (kind) {
    case IneqKind::KatoPonceCommutator:
    case IneqKind::KatoPonceProduct:
    case IneqKind::HomogeneousEmbedding:
    case IneqKind::HardyLittlewoodSobolev:
      std::snprintf(buf, sizeof buf, "s=%g", s);
      break;
    case IneqKind::GagliardoNirenberg:
      std::snprintf(buf, sizeof buf, "s=%g p=%g theta=%g q=%g m=%g r=%g", s, p, theta, q, m, r);
      break;
    case IneqKind::Agmon:
      std::snprintf(buf, sizeof buf, "-");
      break;
    case IneqKind::Interpolation:
      std::snprintf(buf, sizeof buf, "l=%g k=%g s=%g", l, k, s);
      break;
  }
  return buf;
}

std::string InequalityCase::param_hash() const {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](const void* data, std::size_t len) {
    const unsigned char* b = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
      h ^= b[i];
      h *= 1099511628211ull;
    }
  };
  const std::string n = name();
  mix(n.data(), n.size());
  for (double v : {s, m, theta, p, q, r, l, k}) mix(&v, sizeof v);
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

InequalityCase make_kato_ponce_commutator(double s) {
  if (!(s >= 1.0) || s != std::floor(s))
    throw DomainError("the commutator estimate is implemented for integer s >= 1; "
                      "fractional orders would need paraproduct machinery");
  InequalityCase c{IneqKind::KatoPonceCommutator};
  c.s = s;
  return c;
}

InequalityCase make_kato_ponce_product(double s) {
  if (!(s > 0.0)) throw DomainError("product estimate requires s > 0");
  InequalityCase c{IneqKind::KatoPonceProduct};
  c.s = s;
  return c;
}

InequalityCase make_gagliardo_nirenberg(double s, double p, double theta, double q,
                                        double m, double r) {
  require_lebesgue(p, "p");
  require_lebesgue(q, "q");
  require_lebesgue(r, "r");
  if (!(theta > 0.0 && theta <= 1.0)) throw DomainError("theta must lie in (0, 1]");
  if (!(s >= 0.0 && m > 0.0 && s <= m)) throw DomainError("orders must satisfy 0 <= s <= m");
  const double lhs = inv(p) - s / 3.0;
  const double rhs = (1.0 - theta) * inv(q) + theta * (inv(r) - m / 3.0);
  if (std::abs(lhs - rhs) > 1e-10)
    throw DomainError("exponents violate the dimensional balance "
                      "1/p - s/3 = (1-theta)/q + theta (1/r - m/3)");
  InequalityCase c{IneqKind::GagliardoNirenberg};
  c.s = s;
  c.p = p;
  c.theta = theta;
  c.q = q;
  c.m = m;
  c.r = r;
  return c;
}

InequalityCase make_homogeneous_embedding(double s) {
  if (!(s >= 0.0 && s < 1.5))
    throw DomainError("homogeneous embedding needs 0 <= s < 3/2 in three dimensions");
  InequalityCase c{IneqKind::HomogeneousEmbedding};
  c.s = s;
  c.p = s == 0.0 ? 2.0 : 6.0 / (3.0 - 2.0 * s);
  return c;
}

InequalityCase make_agmon() { return InequalityCase{IneqKind::Agmon}; }

InequalityCase make_hls(double s) {
  if (!(s > 0.0 && s < 1.5))
    throw DomainError("the Riesz-potential bound needs 0 < s < 3/2 in three dimensions");
  InequalityCase c{IneqKind::HardyLittlewoodSobolev};
  c.s = s;
  c.p = 6.0 / (3.0 + 2.0 * s);
  return c;
}

InequalityCase make_interpolation(double l, double k, double s) {
  if (!(l >= 0.0 && k > 0.0 && s >= 0.0))
    throw DomainError("interpolation orders must satisfy l >= 0, k > 0, s >= 0");
  InequalityCase c{IneqKind::Interpolation};
  c.l = l;
  c.k = k;
  c.s = s;
  c.theta = k / (l + k + s);
  return c;
}

double check(const InequalityCase& c, const RealField& f, const RealField* g,
             Fourier& fft) {
  const Grid& grid = *f.grid;
  const bool needs_3d = c.kind == IneqKind::GagliardoNirenberg ||
                        c.kind == IneqKind::HomogeneousEmbedding ||
                        c.kind == IneqKind::Agmon ||
                        c.kind == IneqKind::HardyLittlewoodSobolev;
  if (needs_3d && grid.dim() != 3)
    throw DomainError("this inequality is implemented with its three-dimensional exponents");
  if (c.two_fields() && g == nullptr)
    throw DomainError(c.name() + " needs two fields");

  SpectralField fh = fft.forward(f);
  switch (c.kind) {
    case IneqKind::KatoPonceCommutator: {
      SpectralField gh = fft.forward(*g);
      RealField prod = f;
      for (std::size_t i = 0; i < prod.v.size(); ++i) prod.v[i] *= g->v[i];
      SpectralField ph = fft.forward(prod);
      apply_fractional(ph, c.s);
      RealField lam_fg = fft.inverse(ph);
      SpectralField gl = gh;
      apply_fractional(gl, c.s);
      RealField lam_g = fft.inverse(gl);
      for (std::size_t i = 0; i < lam_fg.v.size(); ++i)
        lam_fg.v[i] -= f.v[i] * lam_g.v[i];
      const double lhs = lp_norm(lam_fg, 2.0);
      const double rhs = grad_linf(fh, fft) * lam_lp(gh, c.s - 1.0, 2.0, fft) +
                         lam_lp(fh, c.s, 2.0, fft) * g->max_abs();
      return ratio_of(lhs, rhs);
    }
    case IneqKind::KatoPonceProduct: {
      SpectralField gh = fft.forward(*g);
      RealField prod = f;
      for (std::size_t i = 0; i < prod.v.size(); ++i) prod.v[i] *= g->v[i];
      const double lhs = lam_lp(fft.forward(prod), c.s, 2.0, fft);
      const double rhs = f.max_abs() * lam_lp(gh, c.s, 2.0, fft) +
                         lam_lp(fh, c.s, 2.0, fft) * g->max_abs();
      return ratio_of(lhs, rhs);
    }
    case IneqKind::GagliardoNirenberg: {
      const double lhs = lam_lp(fh, c.s, c.p, fft);
      const double rhs = std::pow(lp_norm(f, c.q), 1.0 - c.theta) *
                         std::pow(lam_lp(fh, c.m, c.r, fft), c.theta);
      return ratio_of(lhs, rhs);
    }
    case IneqKind::HomogeneousEmbedding:
      return ratio_of(lp_norm(f, c.p), lam_lp(fh, c.s, 2.0, fft));
    case IneqKind::Agmon:
      return ratio_of(f.max_abs(), std::sqrt(lam_lp(fh, 1.0, 2.0, fft) *
                                             lam_lp(fh, 2.0, 2.0, fft)));
    case IneqKind::HardyLittlewoodSobolev:
      return ratio_of(lam_lp(fh, -c.s, 2.0, fft), lp_norm(f, c.p));
    case IneqKind::Interpolation: {
      const double lhs = lam_lp(fh, c.l, 2.0, fft);
      const double rhs = std::pow(lam_lp(fh, -c.s, 2.0, fft), c.theta) *
                         std::pow(lam_lp(fh, c.l + c.k, 2.0, fft), 1.0 - c.theta);
      return ratio_of(lhs, rhs);
    }
  }
  throw DomainError("unhandled inequality kind");
}

CalibrationReport calibrate(const InequalityCase& c, GridPtr grid, int samples,
                            std::uint64_t seed, int band, double slope) {
  if (samples < 1) throw DomainError("calibrate needs at least one sample");
  Fourier fft(grid);
  CalibrationReport rep;
  rep.which = c;
  rep.samples = samples;
  rep.seed = seed;
  long double acc = 0.0L;
  for (int i = 0; i < samples; ++i) {
    const std::uint64_t si = seed + 1000ull * static_cast<std::uint64_t>(i);
    RealField f = random_band_field(grid, band, slope, 1.0, si, fft);
    double r;
    if (c.two_fields()) {
      RealField g = random_band_field(grid, band, slope, 1.0, si + 500ull, fft);
      r = check(c, f, &g, fft);
    } else {
      r = check(c, f, nullptr, fft);
    }
    rep.ratios.push_back(r);
    rep.max_ratio = std::max(rep.max_ratio, r);
    acc += r;
  }
  rep.mean_ratio = static_cast<double>(acc / samples);
  return rep;
}

}  // namespace ch6

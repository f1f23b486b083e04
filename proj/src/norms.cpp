#include "norms.hpp"

#include <cmath>
#include <limits>

#include "common.hpp"

namespace ch6 {

double lp_norm(const RealField& u, double p) {
  if (std::isinf(p)) return u.max_abs();
  if (!(p >= 1.0)) throw DomainError("Lp norm requires p >= 1");
  const double h = u.grid->cell_volume();
  long double acc = 0.0L;
  if (p == 2.0) {
    for (double x : u.v) acc += static_cast<long double>(x) * x;
    return std::sqrt(static_cast<double>(acc) * h);
  }
  for (double x : u.v) acc += std::pow(std::abs(static_cast<long double>(x)), p);
  return std::pow(static_cast<double>(acc) * h, 1.0 / p);
}

namespace {

template <class W>
double weighted_l2(const SpectralField& u, W&& weight) {
  const Grid& g = *u.grid;
  const std::size_t ns = g.spec_count();
  long double acc = 0.0L;
  for (std::size_t s = 0; s < ns; ++s) {
    const double a = std::norm(u.c[s]);
    if (a == 0.0) continue;
    acc += static_cast<long double>(g.hermitian_weight(s)) * weight(g.ksq(s)) * a;
  }
  return std::sqrt(static_cast<double>(acc) * g.volume());
}

}  // namespace

double norm(const SpectralField& u, const NormSpec& spec, ZeroModePolicy policy) {
  switch (spec.kind) {
    case NormSpec::Kind::Lp:
      throw DomainError("Lp norm needs real-space samples; use the RealField overload");
    case NormSpec::Kind::DerivL2: {
      if (spec.l < 0) throw DomainError("DerivL2 norm requires l >= 0");
      const int l = spec.l;
      return weighted_l2(u, [l](double q) {
        double w = 1.0;
        for (int i = 0; i < l; ++i) w *= q;
        return w;
      });
    }
    case NormSpec::Kind::Sobolev:
    default: {
      const double s = spec.s;
      if (!spec.homogeneous)
        return weighted_l2(u, [s](double q) { return std::pow(1.0 + q, s); });
      if (s == 0.0) return weighted_l2(u, [](double) { return 1.0; });
      if (s < 0.0 && policy == ZeroModePolicy::Strict && !is_mean_free(u))
        throw DomainError("negative-order Sobolev norm on a field with nonzero mean "
                          "(strict zero-mode policy)");
      // q = 0 contributes nothing: the zero mode is outside the homogeneous
      // scale for s < 0 and annihilated by |k|^{2s} for s > 0.
      return weighted_l2(u, [s](double q) { return q > 0.0 ? std::pow(q, s) : 0.0; });
    }
  }
}

double norm(const RealField& u, const NormSpec& spec, Fourier& fft,
            ZeroModePolicy policy) {
  if (spec.kind == NormSpec::Kind::Lp) return lp_norm(u, spec.p);
  return norm(fft.forward(u), spec, policy);
}

double norm(const RealField& u, const NormSpec& spec, ZeroModePolicy policy) {
  if (spec.kind == NormSpec::Kind::Lp) return lp_norm(u, spec.p);
  Fourier fft(u.grid);
  return norm(fft.forward(u), spec, policy);
}

}  // namespace ch6

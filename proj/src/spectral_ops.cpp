#include "spectral_ops.hpp"

#include <cmath>

#include "common.hpp"

namespace ch6 {

void dealias(SpectralField& f) {
  const Grid& g = *f.grid;
  const std::size_t ns = g.spec_count();
  const auto& keep = g.dealias_mask();
  for (std::size_t s = 0; s < ns; ++s)
    if (!keep[s]) f.c[s] = 0.0;
}

bool is_mean_free(const SpectralField& f, double rel_tol) {
  return std::abs(f.c[0]) <= rel_tol * (1.0 + f.max_abs());
}

void apply_fractional(SpectralField& f, double alpha, ZeroModePolicy policy) {
  if (alpha == 0.0) return;
  if (alpha < 0.0 && policy == ZeroModePolicy::Strict && !is_mean_free(f))
    throw DomainError("fractional power " + std::to_string(alpha) +
                      " requested on a field with nonzero mean (strict zero-mode policy)");
  const Grid& g = *f.grid;
  const std::size_t ns = g.spec_count();
  const double half = 0.5 * alpha;
  for (std::size_t s = 0; s < ns; ++s) {
    const double q = g.ksq(s);
    if (q > 0.0)
      f.c[s] *= std::pow(q, half);
    else
      f.c[s] = 0.0;
  }
}

void apply_derivative(SpectralField& f, int axis, int order) {
  const Grid& g = *f.grid;
  if (axis < 0 || axis >= g.dim())
    throw DomainError("derivative axis out of range for dim=" + std::to_string(g.dim()));
  if (order < 1) throw DomainError("derivative order must be >= 1");
  const bool odd = (order % 2) != 0;
  const int half_n = g.n() / 2;
  const std::size_t ns = g.spec_count();
  int m[3];
  for (std::size_t s = 0; s < ns; ++s) {
    g.decode(s, m);
    if (odd && m[axis] == -half_n) {  // unpaired Nyquist mode
      f.c[s] = 0.0;
      continue;
    }
    const double k = g.k_fundamental() * m[axis];
    const double mag = std::pow(k, order);  // sign included for odd orders
    // (ik)^order = i^order * k^order, with i^order cycling 1, i, -1, -i.
    switch (order & 3) {
      case 0: f.c[s] *= mag; break;
      case 1: f.c[s] *= std::complex<double>(0.0, mag); break;
      case 2: f.c[s] *= -mag; break;
      default: f.c[s] *= std::complex<double>(0.0, -mag); break;
    }
  }
}

void apply_laplacian(SpectralField& f) {
  const Grid& g = *f.grid;
  const std::size_t ns = g.spec_count();
  for (std::size_t s = 0; s < ns; ++s) f.c[s] *= -g.ksq(s);
}

void apply_bilaplacian(SpectralField& f) {
  const Grid& g = *f.grid;
  const std::size_t ns = g.spec_count();
  for (std::size_t s = 0; s < ns; ++s) f.c[s] *= g.ksq(s) * g.ksq(s);
}

}  // namespace ch6

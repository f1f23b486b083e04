#include "random_field.hpp"

#include <cmath>
#include <random>

#include "common.hpp"

namespace ch6 {

SpectralField random_band_spectrum(GridPtr grid, int band, double slope,
                                   std::uint64_t seed) {
  const Grid& g = *grid;
  if (band < 1 || band >= g.n() / 2)
    throw DomainError("random band must satisfy 1 <= band <= n/2 - 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  SpectralField f = SpectralField::zeros(grid);
  const std::size_t ns = g.spec_count();
  int m[3];
  for (std::size_t s = 0; s < ns; ++s) {
    g.decode(s, m);
    const bool zero = (m[0] == 0 && m[1] == 0 && m[2] == 0);
    int mmax = 0;
    for (int d = 0; d < g.dim(); ++d) mmax = std::max(mmax, std::abs(m[d]));
    if (zero || mmax > band) continue;
    const double re = gauss(rng);
    const double im = gauss(rng);
    const double env = std::pow(std::sqrt(g.ksq(s)), slope);
    f.c[s] = std::complex<double>(re, im) * (env / std::sqrt(2.0));
  }

  // The m_last = 0 plane stores both halves of its conjugate pairs; overwrite
  // the upper half so the spectrum is exactly Hermitian.
  if (g.dim() >= 2) {
    const int n = g.n();
    const std::size_t nz = static_cast<std::size_t>(g.nz());
    auto mirror_plane = [&](std::size_t s, int i0, int i1) {
      const int j0 = (n - i0) % n;
      const int j1 = (n - i1) % n;
      std::size_t sm;
      if (g.dim() == 2)
        sm = static_cast<std::size_t>(j0) * nz;
      else
        sm = (static_cast<std::size_t>(j0) * n + static_cast<std::size_t>(j1)) * nz;
      if (sm > s) f.c[sm] = std::conj(f.c[s]);
    };
    if (g.dim() == 2) {
      for (int i0 = 0; i0 < n; ++i0)
        mirror_plane(static_cast<std::size_t>(i0) * nz, i0, 0);
    } else {
      for (int i0 = 0; i0 < n; ++i0)
        for (int i1 = 0; i1 < n; ++i1)
          mirror_plane((static_cast<std::size_t>(i0) * n + i1) * nz, i0, i1);
    }
  }
  return f;
}

RealField random_band_field(GridPtr grid, int band, double slope,
                            double amplitude, std::uint64_t seed, Fourier& fft) {
  SpectralField fh = random_band_spectrum(std::move(grid), band, slope, seed);
  RealField u = fft.inverse(fh);
  long double acc = 0.0L;
  for (double x : u.v) acc += static_cast<long double>(x) * x;
  const double rms = std::sqrt(static_cast<double>(acc) / u.v.size());
  if (rms == 0.0) throw DomainError("random field degenerated to zero");
  const double scale = amplitude / rms;
  for (double& x : u.v) x *= scale;
  return u;
}

}  // namespace ch6

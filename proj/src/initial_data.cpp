#include "initial_data.hpp"

#include <array>
#include <cmath>
#include <limits>

#include "norms.hpp"
#include "random_field.hpp"
#include "snapshot.hpp"

namespace ch6 {

namespace {

RealField gaussian_bump(GridPtr grid, double amplitude, double width) {
  const double L = grid->length();
  const double w = width > 0.0 ? width : L / 25.0;
  const double c = L / 2.0;
  const double inv = 1.0 / (2.0 * w * w);
  return RealField::from_function(grid, [&](const std::array<double, 3>& x) {
    double r2 = 0.0;
    for (int d = 0; d < grid->dim(); ++d) r2 += (x[d] - c) * (x[d] - c);
    return amplitude * std::exp(-r2 * inv);
  });
}

}  // namespace

InitialData generate_initial_data(const InitialDataSpec& spec, GridPtr grid,
                                  std::uint64_t seed, Fourier& fft) {
  InitialData out{RealField::zeros(grid), std::numeric_limits<double>::quiet_NaN()};

  switch (spec.family) {
    case InitFamily::Gaussian:
      out.u = gaussian_bump(grid, spec.amplitude, spec.width);
      out.spectral_slope = 0.0;
      break;
    case InitFamily::BandRandom:
      out.u = random_band_field(grid, spec.kmax, spec.slope, spec.amplitude, seed, fft);
      out.spectral_slope = spec.slope;
      break;
    case InitFamily::Constant:
      for (double& v : out.u.v) v = spec.amplitude;
      break;
    case InitFamily::SingleMode: {
      const double k = spec.mode * grid->k_fundamental();
      const double A = spec.amplitude;
      out.u = RealField::from_function(grid, [&](const std::array<double, 3>& x) {
        return A * std::sin(k * x[0]);
      });
      break;
    }
    case InitFamily::FromFile: {
      RealField f = read_snapshot(spec.path);
      const Grid& g = *f.grid;
      if (g.dim() != grid->dim() || g.n() != grid->n() ||
          std::abs(g.length() - grid->length()) > 1e-12 * grid->length())
        throw ConfigError("init.path '" + spec.path + "': snapshot grid (dim " +
                          std::to_string(g.dim()) + ", n " + std::to_string(g.n()) +
                          ") does not match the configured grid");
      out.u.v = std::move(f.v);
      break;
    }
  }

  if (spec.zero_mean) {
    const double m = out.u.mean();
    for (double& v : out.u.v) v -= m;
  }

  if (spec.target_h2 > 0.0) {
    const double h2 = norm(out.u, NormSpec::sobolev(2.0, false), fft);
    if (!(h2 > 0.0))
      throw ConfigError("init.target_h2: cannot rescale identically zero initial data");
    const double scale = spec.target_h2 / h2;
    for (double& v : out.u.v) v *= scale;
  }

  return out;
}

}  // namespace ch6

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <random>

#include "common.hpp"
#include "fourier.hpp"
#include "grid.hpp"
#include "norms.hpp"
#include "random_field.hpp"
#include "snapshot.hpp"
#include "spectral_ops.hpp"

using namespace ch6;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

RealField random_samples(GridPtr g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  RealField f = RealField::zeros(g);
  for (double& v : f.v) v = d(rng);
  return f;
}

// Index of the stored coefficient with signed mode vector m.
std::size_t spec_index(const Grid& g, std::array<int, 3> want) {
  for (std::size_t s = 0; s < g.spec_count(); ++s) {
    std::array<int, 3> m{0, 0, 0};
    g.decode(s, m.data());
    if (m == want) return s;
  }
  FAIL("mode not found");
  return 0;
}

}  // namespace

TEST_CASE("grid validation and layout") {
  CHECK_THROWS_AS(Grid::create(0, 16, 1.0), ConfigError);
  CHECK_THROWS_AS(Grid::create(4, 16, 1.0), ConfigError);
  CHECK_THROWS_AS(Grid::create(3, 15, 1.0), ConfigError);
  CHECK_THROWS_AS(Grid::create(3, 2, 1.0), ConfigError);
  CHECK_THROWS_AS(Grid::create(3, 16, 0.0), ConfigError);
  CHECK_THROWS_AS(Grid::create(3, 16, -2.0), ConfigError);

  GridPtr g = Grid::create(3, 64, 32.0 * std::numbers::pi);
  CHECK(g->point_count() == 64u * 64u * 64u);
  CHECK(g->nz() == 33);
  CHECK(g->spec_count() == 64u * 64u * 33u);
  CHECK(g->dealias_limit() == 21);
  CHECK(g->k_fundamental() == doctest::Approx(1.0 / 16.0).epsilon(1e-15));
  CHECK(g->volume() == doctest::Approx(std::pow(32.0 * std::numbers::pi, 3)));

  GridPtr g8 = Grid::create(1, 8, kTwoPi);
  CHECK(g8->m_signed(0) == 0);
  CHECK(g8->m_signed(3) == 3);
  CHECK(g8->m_signed(4) == -4);
  CHECK(g8->m_signed(7) == -1);
}

TEST_CASE("transform roundtrip and coefficient normalization") {
  GridPtr g = Grid::create(2, 16, kTwoPi);
  Fourier fft(g);

  RealField u = random_samples(g, 7);
  RealField back = fft.inverse(fft.forward(u));
  double err = 0.0;
  for (std::size_t i = 0; i < u.v.size(); ++i)
    err = std::max(err, std::abs(u.v[i] - back.v[i]));
  CHECK(err < 1e-13);

  // cos(x0): coefficients 1/2 at m = (1,0) and (-1,0); sin(x0): -i/2 at (1,0).
  RealField c = RealField::from_function(
      g, [](const std::array<double, 3>& x) { return std::cos(x[0]); });
  SpectralField ch = fft.forward(c);
  std::size_t sp = spec_index(*g, {1, 0, 0});
  std::size_t sm = spec_index(*g, {-1, 0, 0});
  CHECK(std::abs(ch.c[sp] - 0.5) < 1e-14);
  CHECK(std::abs(ch.c[sm] - 0.5) < 1e-14);

  RealField s = RealField::from_function(
      g, [](const std::array<double, 3>& x) { return std::sin(x[0]); });
  SpectralField sh = fft.forward(s);
  CHECK(std::abs(sh.c[sp] - std::complex<double>(0.0, -0.5)) < 1e-14);
}

TEST_CASE("Parseval ties quadrature and spectral norms together") {
  GridPtr g = Grid::create(3, 16, kTwoPi);
  Fourier fft(g);
  RealField u = random_samples(g, 21);

  double l2_grid = lp_norm(u, 2.0);
  double l2_spec = norm(u, NormSpec::sobolev(0.0, false), fft);
  double l2_deriv0 = norm(u, NormSpec::deriv_l2(0), fft);
  CHECK(l2_grid == doctest::Approx(l2_spec).epsilon(1e-12));
  CHECK(l2_grid == doctest::Approx(l2_deriv0).epsilon(1e-12));
}

TEST_CASE("frozen value: L2 norm of sin on the 2 pi cube") {
  GridPtr g = Grid::create(3, 16, kTwoPi);
  RealField s = RealField::from_function(
      g, [](const std::array<double, 3>& x) { return std::sin(x[0]); });
  // sqrt(V / 2) with V = (2 pi)^3.
  CHECK(lp_norm(s, 2.0) == doctest::Approx(11.136655993663416).epsilon(1e-13));
  CHECK(lp_norm(s, std::numeric_limits<double>::infinity()) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(lp_norm(s, 0.5), DomainError);
}

TEST_CASE("spectral derivatives of single modes are exact") {
  GridPtr g = Grid::create(1, 32, kTwoPi);
  Fourier fft(g);
  const double k = 3.0;
  RealField u = RealField::from_function(
      g, [&](const std::array<double, 3>& x) { return std::sin(k * x[0]); });

  SpectralField d1 = fft.forward(u);
  apply_derivative(d1, 0, 1);
  RealField du = fft.inverse(d1);
  RealField want = RealField::from_function(
      g, [&](const std::array<double, 3>& x) { return k * std::cos(k * x[0]); });
  for (std::size_t i = 0; i < du.v.size(); ++i)
    CHECK(du.v[i] == doctest::Approx(want.v[i]).epsilon(1e-11).scale(k));

  SpectralField d2 = fft.forward(u);
  apply_laplacian(d2);
  RealField lu = fft.inverse(d2);
  for (std::size_t i = 0; i < lu.v.size(); ++i)
    CHECK(lu.v[i] == doctest::Approx(-k * k * u.v[i]).epsilon(1e-11).scale(k * k));

  SpectralField d4 = fft.forward(u);
  apply_bilaplacian(d4);
  RealField bu = fft.inverse(d4);
  for (std::size_t i = 0; i < bu.v.size(); ++i)
    CHECK(bu.v[i] ==
          doctest::Approx(k * k * k * k * u.v[i]).epsilon(1e-11).scale(k * k * k * k));
}

TEST_CASE("odd derivative orders zero the unpaired Nyquist mode") {
  GridPtr g = Grid::create(1, 8, kTwoPi);
  Fourier fft(g);
  RealField u = RealField::from_function(
      g, [](const std::array<double, 3>& x) { return std::cos(4.0 * x[0]); });

  SpectralField d1 = fft.forward(u);
  apply_derivative(d1, 0, 1);
  CHECK(fft.inverse(d1).max_abs() < 1e-13);

  // Even orders keep it: lap cos(4x) = -16 cos(4x).
  SpectralField d2 = fft.forward(u);
  apply_laplacian(d2);
  RealField lu = fft.inverse(d2);
  for (std::size_t i = 0; i < lu.v.size(); ++i)
    CHECK(lu.v[i] == doctest::Approx(-16.0 * u.v[i]).epsilon(1e-12).scale(16.0));
}

TEST_CASE("fractional powers act as |k|^alpha on single modes") {
  GridPtr g = Grid::create(1, 32, kTwoPi);
  Fourier fft(g);
  const double k = 2.0;
  RealField u = RealField::from_function(
      g, [&](const std::array<double, 3>& x) { return std::sin(k * x[0]); });

  SpectralField h = fft.forward(u);
  apply_fractional(h, 1.5, ZeroModePolicy::Project);
  RealField v = fft.inverse(h);
  const double scale = std::pow(k, 1.5);
  for (std::size_t i = 0; i < v.v.size(); ++i)
    CHECK(v.v[i] == doctest::Approx(scale * u.v[i]).epsilon(1e-11).scale(scale));

  // Negative order with a mean: Project drops the mean, Strict refuses.
  RealField shifted = u;
  for (double& x : shifted.v) x += 0.7;
  SpectralField hs = fft.forward(shifted);
  SpectralField hp = hs;
  apply_fractional(hp, -1.0, ZeroModePolicy::Project);
  RealField w = fft.inverse(hp);
  for (std::size_t i = 0; i < w.v.size(); ++i)
    CHECK(w.v[i] == doctest::Approx(u.v[i] / k).epsilon(1e-10).scale(1.0));
  CHECK_THROWS_AS(apply_fractional(hs, -1.0, ZeroModePolicy::Strict), DomainError);
}

TEST_CASE("two-thirds rule keeps low modes and clears the rest") {
  GridPtr g = Grid::create(2, 12, kTwoPi);  // dealias_limit = 4
  SpectralField f = SpectralField::zeros(g);
  for (auto& z : f.c) z = 1.0;
  dealias(f);
  for (std::size_t s = 0; s < g->spec_count(); ++s) {
    std::array<int, 3> m{0, 0, 0};
    g->decode(s, m.data());
    bool keep = std::abs(m[0]) <= 4 && std::abs(m[1]) <= 4;
    CHECK(f.c[s] == (keep ? std::complex<double>(1.0) : std::complex<double>(0.0)));
  }
}

TEST_CASE("is_mean_free distinguishes projected fields") {
  GridPtr g = Grid::create(1, 16, kTwoPi);
  Fourier fft(g);
  RealField u = RealField::from_function(
      g, [](const std::array<double, 3>& x) { return std::sin(x[0]); });
  SpectralField h = fft.forward(u);
  CHECK(is_mean_free(h));
  h.c[0] = 0.5;
  CHECK_FALSE(is_mean_free(h));
}

TEST_CASE("random band fields: support, Hermitian symmetry, scaling, determinism") {
  GridPtr g = Grid::create(3, 16, kTwoPi);
  Fourier fft(g);

  SpectralField spec = random_band_spectrum(g, 3, -1.0, 99);
  for (std::size_t s = 0; s < g->spec_count(); ++s) {
    std::array<int, 3> m{0, 0, 0};
    g->decode(s, m.data());
    int mm = std::max({std::abs(m[0]), std::abs(m[1]), std::abs(m[2])});
    if (mm == 0 || mm > 3) CHECK(std::abs(spec.c[s]) == 0.0);
  }
  // A Hermitian spectrum survives the real-space roundtrip unchanged.
  SpectralField round = fft.forward(fft.inverse(spec));
  double herr = 0.0;
  for (std::size_t s = 0; s < g->spec_count(); ++s)
    herr = std::max(herr, std::abs(round.c[s] - spec.c[s]));
  CHECK(herr < 1e-13);

  const double amp = 0.05;
  RealField u = random_band_field(g, 3, -1.0, amp, 99, fft);
  double rms = lp_norm(u, 2.0) / std::sqrt(g->volume());
  CHECK(rms == doctest::Approx(amp).epsilon(1e-12));
  CHECK(std::abs(u.mean()) < 1e-15);

  RealField u2 = random_band_field(g, 3, -1.0, amp, 99, fft);
  CHECK(u.v == u2.v);  // bitwise reproducible
  RealField u3 = random_band_field(g, 3, -1.0, amp, 100, fft);
  CHECK(u.v != u3.v);

  CHECK_THROWS_AS(random_band_spectrum(g, 0, 0.0, 1), DomainError);
  CHECK_THROWS_AS(random_band_spectrum(g, 8, 0.0, 1), DomainError);
}

TEST_CASE("snapshot files round trip and reject damage") {
  GridPtr g = Grid::create(2, 12, 5.0);
  RealField u = random_samples(g, 3);
  const std::string path = "snapshot_roundtrip.ch6f";
  write_snapshot(u, path);

  RealField r = read_snapshot(path);
  CHECK(r.grid->dim() == 2);
  CHECK(r.grid->n() == 12);
  CHECK(r.grid->length() == doctest::Approx(5.0).epsilon(1e-15));
  CHECK(r.v == u.v);

  CHECK_THROWS_AS(read_snapshot("does_not_exist.ch6f"), IoError);

  {
    std::ofstream bad("snapshot_bad_magic.ch6f", std::ios::binary);
    bad << "NOPE" << std::string(64, '\0');
  }
  CHECK_THROWS_AS(read_snapshot("snapshot_bad_magic.ch6f"), ConfigError);

  {
    std::ifstream in(path, std::ios::binary);
    std::string head(32, '\0');
    in.read(head.data(), 32);
    std::ofstream trunc("snapshot_truncated.ch6f", std::ios::binary);
    trunc.write(head.data(), 32);
  }
  CHECK_THROWS_AS(read_snapshot("snapshot_truncated.ch6f"), ConfigError);

  std::remove(path.c_str());
  std::remove("snapshot_bad_magic.ch6f");
  std::remove("snapshot_truncated.ch6f");
}

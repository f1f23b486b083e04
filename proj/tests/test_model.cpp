#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <cmath>
#include <numbers>

#include "common.hpp"
#include "fourier.hpp"
#include "grid.hpp"
#include "model.hpp"
#include "potential.hpp"
#include "random_field.hpp"

using namespace ch6;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Sixth-order central first-derivative stencil, offsets 1..3.
double variational_derivative(const RealField& u, const RealField& v,
                              const PhysicalParams& p, ModelWork& w, double eps) {
  auto at = [&](double c) {
    RealField s = u;
    for (std::size_t i = 0; i < s.v.size(); ++i) s.v[i] += c * v.v[i];
    return free_energy(s, p, w);
  };
  const double d1 = at(eps) - at(-eps);
  const double d2 = at(2 * eps) - at(-2 * eps);
  const double d3 = at(3 * eps) - at(-3 * eps);
  return (0.75 * d1 - 0.15 * d2 + d3 / 60.0) / eps;
}

double pairing(const RealField& a, const RealField& b) {
  long double acc = 0.0L;
  for (std::size_t i = 0; i < a.v.size(); ++i)
    acc += static_cast<long double>(a.v[i]) * b.v[i];
  return static_cast<double>(acc) * a.grid->cell_volume();
}

}  // namespace

TEST_CASE("parameter map covers both signs and keeps the invariant") {
  KappaTriple t = map_parameters(1.0, 1.0);
  CHECK(t.kappa0 == 1.0);
  CHECK(t.kappa1 == 1.0);
  CHECK(t.kappa2 == 0.0);

  t = map_parameters(-1.0, 1.0);
  CHECK(t.kappa0 == 2.0);
  CHECK(t.kappa1 == 1.0);
  CHECK(t.kappa2 == doctest::Approx(1.7320508075688772).epsilon(1e-15));

  t = map_parameters(-0.5, 2.0);
  CHECK(t.kappa0 == 1.5);
  CHECK(t.kappa1 == 2.0);
  CHECK(t.kappa2 == doctest::Approx(1.0).epsilon(1e-15));

  for (double g0 : {-3.0, -1.2, -0.25, 0.0, 0.4, 1.0, 2.5}) {
    for (double g2 : {0.3, 1.0, 1.7}) {
      KappaTriple k = map_parameters(g0, g2);
      CHECK(k.kappa0 > 0.0);
      CHECK(std::abs(k.kappa0 - k.kappa1 * k.kappa2 * k.kappa2 - g0) <= 1e-14);
    }
  }
}

TEST_CASE("constitutive functions and frozen point values") {
  PhysicalParams p = PhysicalParams::gompper_schick(1.0, 1.0, 1.0, 0.2);
  CHECK(p.f(0.0) == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(p.f(1.0) == 0.0);
  CHECK(p.f(-1.0) == 0.0);
  CHECK(p.f(0.3) == doctest::Approx(0.24014900000000006).epsilon(1e-15));
  CHECK(p.W(0.5) == doctest::Approx(0.11486607142857143).epsilon(1e-14));
  CHECK(p.a(0.5) == doctest::Approx(1.25).epsilon(1e-15));
  CHECK(p.aprime(0.5) == doctest::Approx(1.0).epsilon(1e-15));

  // Derivative relations by finite differences, both models.
  PhysicalParams q = PhysicalParams::pawlow_quartic(0.7, 0.3);
  CHECK(q.a(0.4) == -2.0);
  CHECK(q.aprime(0.4) == 0.0);
  CHECK(q.f(2.0) == doctest::Approx(0.7 * 2.0 + 8.0).epsilon(1e-15));
  const double eps = 1e-6;
  for (const PhysicalParams& m : {p, q}) {
    for (double s : {-1.3, -0.4, 0.0, 0.6, 1.1}) {
      const double fp_fd = (m.f(s + eps) - m.f(s - eps)) / (2 * eps);
      CHECK(m.fprime(s) == doctest::Approx(fp_fd).epsilon(5e-8).scale(1.0));
      const double ap_fd = (m.a(s + eps) - m.a(s - eps)) / (2 * eps);
      CHECK(m.aprime(s) == doctest::Approx(ap_fd).epsilon(5e-8).scale(1.0));
      const double wp_fd = (m.W(s + eps) - m.W(s - eps)) / (2 * eps);
      CHECK(m.f(s) == doctest::Approx(wp_fd).epsilon(5e-8).scale(1.0));
    }
  }

  CHECK_THROWS_AS(PhysicalParams::gompper_schick(0.0, 1.0, 1.0, 0.2), DomainError);
  CHECK_THROWS_AS(PhysicalParams::gompper_schick(1.0, 1.0, -1.0, 0.2), DomainError);
  CHECK_THROWS_AS(PhysicalParams::pawlow_quartic(1.0, 0.3, -1.0), DomainError);

  CHECK(parse_constitutive("f") == ConstitutiveWhich::F);
  CHECK(parse_constitutive("W") == ConstitutiveWhich::WAntiderivative);
  CHECK_THROWS_AS(parse_constitutive("nope"), ConfigError);
}

TEST_CASE("free energy of a single mode matches the closed form") {
  GridPtr g = Grid::create(3, 32, kTwoPi);
  ModelWork w(g);
  const double A = 0.3, k = 2.0;
  RealField u = RealField::from_function(
      g, [&](const std::array<double, 3>& x) { return A * std::sin(k * x[0]); });

  PhysicalParams gs = PhysicalParams::gompper_schick(0.7, 0.9, 1.3, 0.2);
  CHECK(free_energy(u, gs, w) ==
        doctest::Approx(83.25371326320582).epsilon(1e-10));

  PhysicalParams pw = PhysicalParams::pawlow_quartic(0.7, 0.3);
  CHECK(free_energy(u, pw, w) ==
        doctest::Approx(21.95476936040329).epsilon(1e-10));

  // Constant states carry only the bulk density: F(c) = V * W(c).
  RealField c = RealField::zeros(g);
  for (double& x : c.v) x = 0.5;
  CHECK(free_energy(c, gs, w) ==
        doctest::Approx(g->volume() * gs.W(0.5)).epsilon(1e-12));
}

TEST_CASE("chemical potential is the variational derivative of the energy") {
  GridPtr g = Grid::create(1, 128, kTwoPi);
  ModelWork w(g);
  Fourier& fft = w.fft();
  RealField u = random_band_field(g, 2, 0.0, 0.4, 11, fft);
  RealField v = random_band_field(g, 2, 0.0, 0.3, 12, fft);

  for (const PhysicalParams& p :
       {PhysicalParams::gompper_schick(0.8, 1.0, 1.2, 0.2),
        PhysicalParams::gompper_schick(0.8, -1.0, 1.2, 0.2),
        PhysicalParams::pawlow_quartic(0.8, 0.3)}) {
    RealField mu = chemical_potential(u, p, w);
    const double lhs = variational_derivative(u, v, p, w, 1e-2);
    const double rhs = pairing(mu, v);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9).scale(std::abs(rhs) + 1.0));
  }
}

TEST_CASE("constant states sit at the bulk potential value") {
  GridPtr g = Grid::create(2, 16, kTwoPi);
  ModelWork w(g);
  PhysicalParams p = PhysicalParams::gompper_schick(1.0, 1.0, 1.0, 0.2);
  RealField c = RealField::zeros(g);
  for (double& x : c.v) x = 0.3;
  RealField mu = chemical_potential(c, p, w);
  for (double m : mu.v)
    CHECK(m == doctest::Approx(p.f(0.3)).epsilon(1e-12));

  RealField fe = constitutive_eval(c, ConstitutiveWhich::F, p);
  CHECK(fe.v[0] == doctest::Approx(p.f(0.3)).epsilon(1e-15));
}

TEST_CASE("kappa formulation agrees with the gradient-flow form") {
  GridPtr g = Grid::create(2, 32, kTwoPi);
  ModelWork w(g);
  RealField u = random_band_field(g, 4, -0.5, 0.5, 31, w.fft());

  PhysicalParams pos = PhysicalParams::gompper_schick(1.0, 1.0, 1.0, 0.2);
  PhysicalParams neg = PhysicalParams::gompper_schick(1.0, -1.0, 1.0, 0.2);
  CHECK(formulation_residual(u, pos, w) <= 1e-12);
  CHECK(formulation_residual(u, neg, w) <= 1e-12);

  PhysicalParams pw = PhysicalParams::pawlow_quartic(1.0, 0.3);
  CHECK_THROWS_AS(formulation_residual(u, pw, w), ConfigError);
  SpectralField uh = w.fft().forward(u);
  CHECK_THROWS_AS(nonlinear_rhs_hat(uh, pw, w), ConfigError);
}

TEST_CASE("nonlinear term moves no mass") {
  GridPtr g = Grid::create(3, 16, kTwoPi);
  ModelWork w(g);
  PhysicalParams p = PhysicalParams::gompper_schick(1.0, -1.0, 1.0, 0.2);
  RealField u = random_band_field(g, 3, 0.0, 0.5, 5, w.fft());
  for (double& x : u.v) x += 0.1;  // nonzero mean exercises the zero mode
  SpectralField nh = nonlinear_rhs_hat(w.fft().forward(u), p, w);
  CHECK(std::abs(nh.c[0]) == 0.0);
}

TEST_CASE("mass flux of a single mode, cubic-only potential") {
  // alpha = 1 kills the linear bulk term: f(s) = s^3, a = -2, and for
  // u = A sin(k x) the potential is mu = (delta k^4 - 2 k^2) A sin(k x)
  // + A^3 sin^3(k x) with sin^3 = (3 sin - sin(3.))/4.  The flux is -M mu_x.
  GridPtr g = Grid::create(1, 64, kTwoPi);
  ModelWork w(g);
  const double delta = 0.7, M = 1.5, A = 0.4, k = 2.0;
  PhysicalParams p = PhysicalParams::pawlow_quartic(delta, 1.0, M);
  RealField u = RealField::from_function(
      g, [&](const std::array<double, 3>& x) { return A * std::sin(k * x[0]); });

  std::vector<RealField> j = mass_flux(u, p, w);
  REQUIRE(j.size() == 1);
  const double c1 = (delta * k * k * k * k - 2.0 * k * k) * A + 0.75 * A * A * A;
  const double c3 = -A * A * A / 4.0;
  RealField want = RealField::from_function(g, [&](const std::array<double, 3>& x) {
    return -M * (c1 * k * std::cos(k * x[0]) + c3 * 3.0 * k * std::cos(3.0 * k * x[0]));
  });
  for (std::size_t i = 0; i < want.v.size(); ++i)
    CHECK(j[0].v[i] == doctest::Approx(want.v[i]).epsilon(1e-10).scale(30.0));
}

TEST_CASE("oversampled products agree with the two-thirds rule on banded data") {
  GridPtr g = Grid::create(2, 24, kTwoPi);
  ModelWork plain(g, false);
  ModelWork fine(g, true);
  PhysicalParams p = PhysicalParams::gompper_schick(1.0, -0.5, 1.0, 0.2);
  RealField u = random_band_field(g, 2, 0.0, 0.4, 77, plain.fft());

  // Band 2 products live below every cutoff involved, so both pipelines
  // produce the same coarse spectrum up to roundoff.
  SpectralField a = nonlinear_rhs_hat(plain.fft().forward(u), p, plain);
  SpectralField b = nonlinear_rhs_hat(fine.fft().forward(u), p, fine);
  double err = 0.0;
  for (std::size_t s = 0; s < g->spec_count(); ++s)
    err = std::max(err, std::abs(a.c[s] - b.c[s]));
  CHECK(err < 1e-11);

  CHECK(free_energy(u, p, plain) ==
        doctest::Approx(free_energy(u, p, fine)).epsilon(1e-12));
}

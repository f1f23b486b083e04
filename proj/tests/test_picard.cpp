#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <cmath>
#include <numbers>

#include "common.hpp"
#include "fourier.hpp"
#include "grid.hpp"
#include "norms.hpp"
#include "picard.hpp"
#include "random_field.hpp"

using namespace ch6;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// First sweep starts from the zero background, so it solves the constant
// coefficient problem v_t = -(delta k^6 + g0 k^4 + h0 k^2) v mode by mode.
// For u0 = A sin(m x) the endpoint is A exp(-rate t1) sin(m x), in both signs
// of g0: the kappa2 contribution of the frozen bracket restores g0 exactly.
void check_first_iterate(double g0, double expected_exp) {
  GridPtr g = Grid::create(1, 32, kTwoPi);
  PhysicalParams p = PhysicalParams::gompper_schick(1.0, g0, 1.0, 0.2);
  const double A = 1e-3, m = 2.0;
  RealField u0 = RealField::from_function(
      g, [&](const std::array<double, 3>& x) { return A * std::sin(m * x[0]); });

  PicardConfig cfg;
  cfg.t1 = 0.1;
  cfg.jmax = 1;
  cfg.inner_steps = 2048;
  PicardResult res = picard_local_solve(u0, p, cfg);
  REQUIRE(res.final_iterate.grid != nullptr);
  REQUIRE(res.sup_h2.size() == 1);

  const double amp = A * expected_exp;
  double err = 0.0;
  for (std::size_t i = 0; i < u0.v.size(); ++i) {
    const double want = amp * std::sin(m * g->coord(static_cast<int>(i)));
    err = std::max(err, std::abs(res.final_iterate.v[i] - want));
  }
  CHECK(err <= 1e-10 * amp);
}

}  // namespace

TEST_CASE("first iterate matches the closed-form linear flow, g0 positive") {
  // rate = 64 + 16 + 0.8 = 80.8
  check_first_iterate(1.0, 0.0003096710354186262);
}

TEST_CASE("first iterate matches the closed-form linear flow, g0 negative") {
  // rate = 64 - 16 + 0.8 = 48.8
  check_first_iterate(-1.0, 0.007597014027577567);
}

TEST_CASE("zero data degenerates cleanly") {
  GridPtr g = Grid::create(1, 16, kTwoPi);
  PhysicalParams p = PhysicalParams::gompper_schick(1.0, 1.0, 1.0, 0.2);
  PicardConfig cfg;
  cfg.t1 = 0.05;
  cfg.jmax = 3;
  cfg.inner_steps = 32;
  PicardResult res = picard_local_solve(RealField::zeros(g), p, cfg);
  CHECK(res.degenerate);
  CHECK(res.contraction);
  CHECK(res.ratios.empty());
  CHECK(res.message == "iterates coincide to roundoff; ratios are undefined");
}

TEST_CASE("small data contracts on a short interval") {
  GridPtr g = Grid::create(2, 16, kTwoPi);
  PhysicalParams p = PhysicalParams::gompper_schick(1.0, 1.0, 1.0, 0.2);
  Fourier fft(g);
  RealField u0 = random_band_field(g, 2, 0.0, 1e-3, 5, fft);

  PicardConfig cfg;
  cfg.t1 = 0.1;
  cfg.jmax = 4;
  cfg.inner_steps = 128;
  PicardResult res = picard_local_solve(u0, p, cfg);
  CHECK_FALSE(res.degenerate);
  REQUIRE(res.sup_h2.size() == 4);
  REQUIRE(!res.ratios.empty());
  for (double r : res.ratios) {
    CHECK(r > 0.0);
    CHECK(r < 1.0);
  }
  CHECK(res.contraction);
  // the data is small, so the iterates stay within the same ball
  for (double s : res.sup_h2) CHECK(s <= 2.0 * res.sup_h2.front());
}

TEST_CASE("configuration guards") {
  GridPtr g = Grid::create(2, 16, kTwoPi);
  Fourier fft(g);
  RealField u0 = random_band_field(g, 2, 0.0, 1e-3, 5, fft);

  PhysicalParams pw = PhysicalParams::pawlow_quartic(1.0, 0.3);
  PicardConfig cfg;
  CHECK_THROWS_AS(picard_local_solve(u0, pw, cfg), ConfigError);

  PhysicalParams p = PhysicalParams::gompper_schick(1.0, -1.0, 1.0, 0.2);
  PicardConfig bad = cfg;
  bad.inner_steps = 2;  // far below the stability limit for kappa2 != 0
  CHECK_THROWS_AS(picard_local_solve(u0, p, bad), ConfigError);

  PicardConfig neg = cfg;
  neg.t1 = -1.0;
  CHECK_THROWS_AS(picard_local_solve(u0, p, neg), ConfigError);
  PicardConfig j0 = cfg;
  j0.jmax = 0;
  CHECK_THROWS_AS(picard_local_solve(u0, p, j0), ConfigError);
}

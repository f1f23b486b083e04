#include "potential.hpp"

#include <cmath>

namespace ch6 {

KappaTriple map_parameters(double g0, double g2) {
  if (!(g2 > 0.0)) throw DomainError("map_parameters requires g2 > 0");
  if (!std::isfinite(g0)) throw DomainError("map_parameters requires finite g0");
  if (g0 > 0.0) return {g0, g2, 0.0};
  return {1.0 - g0, g2, std::sqrt((1.0 - 2.0 * g0) / g2)};
}

PhysicalParams PhysicalParams::gompper_schick(double delta, double g0, double g2,
                                              double h0, double mobility) {
  if (!(delta > 0.0)) throw DomainError("delta must be positive");
  if (!(mobility > 0.0)) throw DomainError("mobility must be positive");
  if (!(h0 > 0.0 && h0 < 0.25)) throw DomainError("h0 must lie in (0, 0.25)");
  PhysicalParams p;
  p.potential = PotentialKind::GompperSchick;
  p.delta = delta;
  p.mobility = mobility;
  p.g0 = g0;
  p.g2 = g2;
  p.h0 = h0;
  const KappaTriple k = map_parameters(g0, g2);
  p.kappa0 = k.kappa0;
  p.kappa1 = k.kappa1;
  p.kappa2 = k.kappa2;
  return p;
}

PhysicalParams PhysicalParams::pawlow_quartic(double delta, double alpha,
                                              double mobility) {
  if (!(delta > 0.0)) throw DomainError("delta must be positive");
  if (!(mobility > 0.0)) throw DomainError("mobility must be positive");
  if (!std::isfinite(alpha)) throw DomainError("alpha must be finite");
  PhysicalParams p;
  p.potential = PotentialKind::PawlowQuartic;
  p.delta = delta;
  p.mobility = mobility;
  p.alpha = alpha;
  p.kappa0 = p.kappa1 = p.kappa2 = 0.0;  // kappa-form applies to GompperSchick only
  return p;
}

double PhysicalParams::f(double s) const {
  if (potential == PotentialKind::GompperSchick) {
    const double w = s * s - 1.0;
    return w * w * (s * s + h0);
  }
  return (1.0 - alpha) * s + s * s * s;
}

double PhysicalParams::fprime(double s) const {
  if (potential == PotentialKind::GompperSchick) {
    const double s2 = s * s;
    return s * (6.0 * s2 * s2 + 4.0 * (h0 - 2.0) * s2 + 2.0 * (1.0 - 2.0 * h0));
  }
  return (1.0 - alpha) + 3.0 * s * s;
}

double PhysicalParams::a(double s) const {
  if (potential == PotentialKind::GompperSchick) return g0 + g2 * s * s;
  return -2.0;
}

double PhysicalParams::aprime(double s) const {
  if (potential == PotentialKind::GompperSchick) return 2.0 * g2 * s;
  return 0.0;
}

double PhysicalParams::W(double s) const {
  const double s2 = s * s;
  if (potential == PotentialKind::GompperSchick) {
    // Antiderivative of the sextic, normalized so W(0) = 0.
    return s * (s2 * s2 * s2 / 7.0 + (h0 - 2.0) * s2 * s2 / 5.0 +
                (1.0 - 2.0 * h0) * s2 / 3.0 + h0);
  }
  return 0.5 * (1.0 - alpha) * s2 + 0.25 * s2 * s2;
}

ConstitutiveWhich parse_constitutive(const std::string& name) {
  if (name == "f") return ConstitutiveWhich::F;
  if (name == "fprime" || name == "f_prime" || name == "f'") return ConstitutiveWhich::FPrime;
  if (name == "a") return ConstitutiveWhich::A;
  if (name == "aprime" || name == "a_prime" || name == "a'") return ConstitutiveWhich::APrime;
  if (name == "W" || name == "antiderivative") return ConstitutiveWhich::WAntiderivative;
  throw ConfigError("unknown constitutive function '" + name + "'");
}

}  // namespace ch6

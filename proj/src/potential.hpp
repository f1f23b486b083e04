#pragma once

#include <string>

#include "common.hpp"

namespace ch6 {

enum class PotentialKind { GompperSchick, PawlowQuartic };

// Derivative-coefficient model: kappa-form parameters derived from (g0, g2).
struct KappaTriple {
  double kappa0;
  double kappa1;
  double kappa2;
};

// Piecewise map keeping kappa0 > 0 in both signs of g0; the combination
// kappa0 - kappa1 * kappa2^2 always equals g0.
KappaTriple map_parameters(double g0, double g2);

struct PhysicalParams {
  PotentialKind potential = PotentialKind::GompperSchick;
  double delta = 1.0;     // sixth-order coefficient, > 0
  double mobility = 1.0;  // > 0
  // GompperSchick parameters.
  double g0 = 1.0;
  double g2 = 1.0;  // > 0
  double h0 = 0.2;
  // PawlowQuartic parameter.
  double alpha = 0.0;
  // Derived kappa-form (GompperSchick only).
  double kappa0 = 1.0;
  double kappa1 = 1.0;
  double kappa2 = 0.0;

  static PhysicalParams gompper_schick(double delta, double g0, double g2,
                                       double h0, double mobility = 1.0);
  static PhysicalParams pawlow_quartic(double delta, double alpha,
                                       double mobility = 1.0);

  // Bulk potential f, its derivative, the gradient coefficient a and its
  // derivative, and the antiderivative W of f used as the free-energy density
  // (so that the variational identity F'(u)[v] = <mu, v> holds exactly).
  double f(double s) const;
  double fprime(double s) const;
  double a(double s) const;
  double aprime(double s) const;
  double W(double s) const;
};

enum class ConstitutiveWhich { F, FPrime, A, APrime, WAntiderivative };

ConstitutiveWhich parse_constitutive(const std::string& name);

}  // namespace ch6

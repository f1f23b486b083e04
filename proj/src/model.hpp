#pragma once

#include <array>
#include <memory>
#include <vector>

#include "fourier.hpp"
#include "norms.hpp"
#include "potential.hpp"

namespace ch6 {

RealField constitutive_eval(const RealField& u, ConstitutiveWhich which,
                            const PhysicalParams& p);

// Shared machinery for assembling the nonlinear products of the model.  All
// model operators route their products through one pipeline so the two
// published formulations stay numerically consistent: ingredients (values,
// Laplacian, gradient) are spectral derivatives of the dealiased input,
// products are formed pointwise on the product grid, and the resulting
// bracket is projected back onto the 2/3-rule band.
//
// With `oversample` the product grid has twice the resolution per axis, which
// removes aliasing from quadratic and cubic products; the default works on
// the native grid and relies on the 2/3 rule alone.  Holds scratch state:
// use one ModelWork per thread.
class ModelWork {
public:
  explicit ModelWork(GridPtr grid, bool oversample = false);

  const GridPtr& grid() const { return grid_; }
  bool oversample() const { return oversample_; }
  Fourier& fft() { return fft_; }

  // Pointwise ingredient arrays on the product grid, filled by ingredients().
  const std::vector<double>& u() const { return u_.v; }
  const std::vector<double>& lap() const { return lap_.v; }
  const std::vector<double>& gsq() const { return gsq_.v; }
  std::vector<double>& bracket() { return bracket_.v; }

  // Expects a dealiased coarse spectrum.
  void ingredients(const SpectralField& u_hat, bool need_derivatives = true);
  // Transforms bracket() and projects it onto dealiased coarse modes.
  void bracket_to_coarse(SpectralField& out);
  // Quadrature step of the product grid.
  double product_cell_volume() const;

private:
  void lift(const SpectralField& coarse, SpectralField& fine) const;

  GridPtr grid_;
  bool oversample_;
  Fourier fft_;
  GridPtr pgrid_;
  std::unique_ptr<Fourier> pfft_;
  std::vector<std::int64_t> lift_map_;

  RealField u_, lap_, gsq_, bracket_;
  std::array<RealField, 3> grad_;
  SpectralField spec_a_, spec_b_;
};

// mu = delta lap^2 u - a(u) lap u - a'(u)/2 |grad u|^2 + f(u).
SpectralField chemical_potential_hat(const SpectralField& u_hat,
                                     const PhysicalParams& p, ModelWork& w);
RealField chemical_potential(const RealField& u, const PhysicalParams& p, ModelWork& w);

// j = -M grad mu, one component per axis.
std::vector<RealField> mass_flux(const RealField& u, const PhysicalParams& p, ModelWork& w);

// F(u) = int W(u) + a(u)/2 |grad u|^2 + delta/2 (lap u)^2 dx with W' = f,
// evaluated by the trapezoidal (= spectral) quadrature of the product grid.
double free_energy(const RealField& u, const PhysicalParams& p, ModelWork& w);
double free_energy_hat(const SpectralField& u_hat, const PhysicalParams& p, ModelWork& w);

// Divergence-free-form right-hand side of the kappa formulation:
//   N(u) = -lap[ kappa1 (u+kappa2)(u-kappa2) lap u + kappa1 u |grad u|^2 - f(u) ].
// The full flow is u_t = delta lap^3 u - kappa0 lap^2 u + N(u).
// GompperSchick only.
SpectralField nonlinear_rhs_hat(const SpectralField& u_hat, const PhysicalParams& p,
                                ModelWork& w);
RealField nonlinear_rhs(const RealField& u, const PhysicalParams& p, ModelWork& w);

// Relative L2 mismatch between the kappa formulation of u_t and lap(mu),
// with both sides assembled from the same ingredient arrays.
double formulation_residual(const RealField& u, const PhysicalParams& p, ModelWork& w);

// ||grad mu||_{L2}^2, the dissipation rate functional (up to the mobility).
double mu_grad_sq(const SpectralField& u_hat, const PhysicalParams& p, ModelWork& w);

}  // namespace ch6

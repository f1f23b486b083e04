#pragma once

#include "field.hpp"

namespace ch6 {

enum class ZeroModePolicy { Project, Strict };

// Zeroes every mode with any |m_j| > floor(n/3).  Idempotent.
void dealias(SpectralField& f);

// Fractional Laplacian power: multiplies mode k by |k|^alpha.  alpha == 0 is
// the exact identity.  For alpha < 0 the zero mode is annihilated under
// Project; Strict raises DomainError when the field has a nonzero mean.
void apply_fractional(SpectralField& f, double alpha,
                      ZeroModePolicy policy = ZeroModePolicy::Project);

// Partial derivative of integer order along one axis: multiplier (i k_axis)^order.
// For odd orders the unpaired Nyquist mode m = -n/2 is zeroed so the result
// stays the derivative of a real trigonometric interpolant.
void apply_derivative(SpectralField& f, int axis, int order);

// Laplacian and bilaplacian multipliers.
void apply_laplacian(SpectralField& f);
void apply_bilaplacian(SpectralField& f);

// |c[0]| <= tol * (1 + max_mode) test used by the strict zero-mode policy.
bool is_mean_free(const SpectralField& f, double rel_tol = 1e-12);

}  // namespace ch6

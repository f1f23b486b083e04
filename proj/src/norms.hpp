#pragma once

#include "fourier.hpp"
#include "spectral_ops.hpp"

namespace ch6 {

// Norm request.  Lebesgue norms are quadrature sums over grid points;
// Sobolev-type norms are Fourier-multiplier sums.  With the coefficient
// normalization used here Parseval reads ||u||_{L2}^2 = V * sum_m |u_hat(m)|^2
// where V = L^dim and the sum runs over the full spectrum (stored entries
// carry their Hermitian multiplicity).
struct NormSpec {
  enum class Kind { Lp, Sobolev, DerivL2 };

  Kind kind = Kind::Lp;
  double p = 2.0;          // Lp exponent, may be infinity
  double s = 0.0;          // Sobolev smoothness
  bool homogeneous = true; // |k|^{2s} vs (1+|k|^2)^s weights
  int l = 0;               // DerivL2 order: ||grad^l u||_{L2}

  static NormSpec lp(double p) { return {Kind::Lp, p, 0.0, true, 0}; }
  static NormSpec sobolev(double s, bool homogeneous = true) {
    return {Kind::Sobolev, 2.0, s, homogeneous, 0};
  }
  static NormSpec deriv_l2(int l) { return {Kind::DerivL2, 2.0, 0.0, true, l}; }
};

double lp_norm(const RealField& u, double p);

// Spectral-side norms.  Lp requests need a transform and are rejected here.
double norm(const SpectralField& u, const NormSpec& spec,
            ZeroModePolicy policy = ZeroModePolicy::Project);

// Any norm; spectral kinds transform through fft.
double norm(const RealField& u, const NormSpec& spec, Fourier& fft,
            ZeroModePolicy policy = ZeroModePolicy::Project);

// Convenience for one-off use: builds a transform internally.
double norm(const RealField& u, const NormSpec& spec,
            ZeroModePolicy policy = ZeroModePolicy::Project);

}  // namespace ch6

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fourier.hpp"
#include "norms.hpp"

namespace ch6 {

// Empirical checks of the functional inequalities the a-priori estimates rest
// on.  check() returns the ratio LHS / RHS for concrete fields; calibrate()
// samples random band-limited fields and reports the observed constants.
enum class IneqKind {
  KatoPonceCommutator,   // ||L^s(fg) - f L^s g|| <= C(||grad f||_inf ||L^{s-1}g|| + ||L^s f|| ||g||_inf)
  KatoPonceProduct,      // ||L^s(fg)|| <= C(||f||_inf ||L^s g|| + ||L^s f|| ||g||_inf)
  GagliardoNirenberg,    // ||L^s u||_p <= C ||u||_q^{1-theta} ||L^m u||_r^theta
  HomogeneousEmbedding,  // ||u||_p <= C ||L^s u||_2, p = 6/(3-2s)
  Agmon,                 // ||u||_inf <= C ||L u||^{1/2} ||L^2 u||^{1/2}
  HardyLittlewoodSobolev,// ||L^{-s} u||_2 <= C ||u||_p, 1/p = 1/2 + s/3
  Interpolation,         // ||L^l u|| <= ||L^{-s} u||^theta ||L^{l+k} u||^{1-theta}
};

struct InequalityCase {
  IneqKind kind;
  double s = 0.0;
  double m = 0.0;      // GagliardoNirenberg upper order
  double theta = 0.0;
  double p = 0.0, q = 0.0, r = 0.0;
  double l = 0.0, k = 0.0;  // Interpolation orders

  bool two_fields() const {
    return kind == IneqKind::KatoPonceCommutator || kind == IneqKind::KatoPonceProduct;
  }
  std::string name() const;
  std::string param_text() const;
  std::string param_hash() const;  // FNV-1a over the parameters, hex
};

InequalityCase make_kato_ponce_commutator(double s);
InequalityCase make_kato_ponce_product(double s);
InequalityCase make_gagliardo_nirenberg(double s, double p, double theta, double q,
                                        double m, double r);
InequalityCase make_homogeneous_embedding(double s);
InequalityCase make_agmon();
InequalityCase make_hls(double s);
// theta = k / (l + k + s); the sharp constant of this family is exactly 1.
InequalityCase make_interpolation(double l, double k, double s);

// LHS / RHS for the given fields (g ignored unless two_fields()).  Zero over
// zero counts as ratio 0.
double check(const InequalityCase& c, const RealField& f, const RealField* g,
             Fourier& fft);

struct CalibrationReport {
  InequalityCase which;
  int samples = 0;
  std::uint64_t seed = 0;
  double max_ratio = 0.0;
  double mean_ratio = 0.0;
  std::vector<double> ratios;
};

CalibrationReport calibrate(const InequalityCase& c, GridPtr grid, int samples,
                            std::uint64_t seed, int band, double slope);

}  // namespace ch6

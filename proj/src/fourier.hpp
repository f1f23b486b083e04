#pragma once

#include <complex>
#include <vector>

#include "field.hpp"
#include "grid.hpp"

struct fftw_plan_s;

namespace ch6 {

// FFTW-backed transform pair for one grid.
//
// Conventions:
//   forward:  u_hat(m) = n^{-dim} * sum_x u(x) exp(-i k_m . x)
//   inverse:  u(x)     = sum_m u_hat(m) exp(+i k_m . x)
// so forward(inverse(.)) is the identity and coefficients are geometry-free
// amplitudes.  Plans are created with FFTW_ESTIMATE so results do not depend
// on planner timing; execution goes through internal scratch buffers, which
// keeps the API const-free of aliasing surprises but not thread-safe.  Use
// one Fourier instance per worker.
class Fourier {
public:
  explicit Fourier(GridPtr grid);
  ~Fourier();
  Fourier(const Fourier&) = delete;
  Fourier& operator=(const Fourier&) = delete;

  const GridPtr& grid() const { return grid_; }

  void forward(const double* in, std::complex<double>* out);
  void inverse(const std::complex<double>* in, double* out);

  SpectralField forward(const RealField& f);
  RealField inverse(const SpectralField& f);

private:
  GridPtr grid_;
  fftw_plan_s* fwd_;
  fftw_plan_s* bwd_;
  double* rbuf_;
  std::complex<double>* cbuf_;
};

}  // namespace ch6

#include "fourier.hpp"

#include <fftw3.h>

#include <cstring>

namespace ch6 {

Fourier::Fourier(GridPtr grid) : grid_(std::move(grid)) {
  const int n = grid_->n();
  int dims[3] = {n, n, n};
  rbuf_ = fftw_alloc_real(grid_->point_count());
  cbuf_ = reinterpret_cast<std::complex<double>*>(fftw_alloc_complex(grid_->spec_count()));
  fwd_ = fftw_plan_dft_r2c(grid_->dim(), dims, rbuf_,
                           reinterpret_cast<fftw_complex*>(cbuf_), FFTW_ESTIMATE);
  bwd_ = fftw_plan_dft_c2r(grid_->dim(), dims,
                           reinterpret_cast<fftw_complex*>(cbuf_), rbuf_, FFTW_ESTIMATE);
}

Fourier::~Fourier() {
  fftw_destroy_plan(fwd_);
  fftw_destroy_plan(bwd_);
  fftw_free(rbuf_);
  fftw_free(cbuf_);
}

void Fourier::forward(const double* in, std::complex<double>* out) {
  std::memcpy(rbuf_, in, grid_->point_count() * sizeof(double));
  fftw_execute(fwd_);
  const double scale = 1.0 / static_cast<double>(grid_->point_count());
  const std::size_t ns = grid_->spec_count();
  for (std::size_t s = 0; s < ns; ++s) out[s] = cbuf_[s] * scale;
}

void Fourier::inverse(const std::complex<double>* in, double* out) {
  // c2r destroys its input, hence the scratch copy.  With the 1/n^dim forward
  // normalization the unnormalized c2r is already the exact synthesis sum.
  std::memcpy(cbuf_, in, grid_->spec_count() * sizeof(std::complex<double>));
  fftw_execute(bwd_);
  std::memcpy(out, rbuf_, grid_->point_count() * sizeof(double));
}

SpectralField Fourier::forward(const RealField& f) {
  SpectralField out = SpectralField::zeros(grid_);
  forward(f.v.data(), out.c.data());
  return out;
}

RealField Fourier::inverse(const SpectralField& f) {
  RealField out = RealField::zeros(grid_);
  inverse(f.c.data(), out.v.data());
  return out;
}

}  // namespace ch6

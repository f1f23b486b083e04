#pragma once

#include <cstdint>

#include "fourier.hpp"

namespace ch6 {

// Random band-limited field: independent complex Gaussian coefficients with
// envelope |k|^slope on 0 < max_j |m_j| <= band (index units), Hermitian
// symmetry enforced exactly, zero mean.  The draw sequence depends only on
// the seed and the grid, never on memory layout or thread count.
SpectralField random_band_spectrum(GridPtr grid, int band, double slope,
                                   std::uint64_t seed);

// Real-space version, rescaled so that ||u||_{L2} / sqrt(V) (the RMS value)
// equals `amplitude`.
RealField random_band_field(GridPtr grid, int band, double slope,
                            double amplitude, std::uint64_t seed, Fourier& fft);

}  // namespace ch6

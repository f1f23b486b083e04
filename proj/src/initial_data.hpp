#pragma once

#include "config.hpp"
#include "fourier.hpp"

namespace ch6 {

struct InitialData {
  RealField u;
  // Spectral envelope exponent of the data when one is defined (gaussian: 0,
  // band_random: the configured slope), NaN otherwise.  Decay predictions
  // need it.
  double spectral_slope;
};

InitialData generate_initial_data(const InitialDataSpec& spec, GridPtr grid,
                                  std::uint64_t seed, Fourier& fft);

}  // namespace ch6

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <vector>

#include "grid.hpp"

namespace ch6 {

// Real-space samples, row-major over (x0, x1, ..., x_{dim-1}).
struct RealField {
  GridPtr grid;
  std::vector<double> v;

  static RealField zeros(GridPtr g) {
    RealField f;
    f.grid = std::move(g);
    f.v.assign(f.grid->point_count(), 0.0);
    return f;
  }

  // Samples f(x) with x filled up to grid->dim(); trailing entries stay 0.
  template <class F>
  static RealField from_function(GridPtr g, F&& fn) {
    RealField f = zeros(g);
    const int dim = f.grid->dim();
    const int n = f.grid->n();
    std::array<double, 3> x{0.0, 0.0, 0.0};
    std::size_t p = 0;
    const int n0 = n;
    const int n1 = dim >= 2 ? n : 1;
    const int n2 = dim >= 3 ? n : 1;
    for (int i0 = 0; i0 < n0; ++i0) {
      x[0] = f.grid->coord(i0);
      for (int i1 = 0; i1 < n1; ++i1) {
        if (dim >= 2) x[1] = f.grid->coord(i1);
        for (int i2 = 0; i2 < n2; ++i2) {
          if (dim >= 3) x[2] = f.grid->coord(i2);
          f.v[p++] = fn(x);
        }
      }
    }
    return f;
  }

  double mean() const {
    long double acc = 0.0L;
    for (double x : v) acc += x;
    return static_cast<double>(acc / v.size());
  }

  double max_abs() const {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
  }

  bool finite() const {
    for (double x : v)
      if (!std::isfinite(x)) return false;
    return true;
  }
};

// Fourier coefficients in real-to-complex layout, normalized so that a pure
// cosine of unit amplitude carries coefficients of modulus 1/2.
struct SpectralField {
  GridPtr grid;
  std::vector<std::complex<double>> c;

  static SpectralField zeros(GridPtr g) {
    SpectralField f;
    f.grid = std::move(g);
    f.c.assign(f.grid->spec_count(), std::complex<double>(0.0, 0.0));
    return f;
  }

  bool finite() const {
    for (const auto& z : c)
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
  }

  double max_abs() const {
    double m = 0.0;
    for (const auto& z : c) m = std::max(m, std::abs(z));
    return m;
  }
};

}  // namespace ch6

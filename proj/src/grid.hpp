#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <vector>

#include "common.hpp"

namespace ch6 {

// Uniform periodic grid with n points per axis on [0, L)^dim, dim in {1,2,3}.
// Wavenumbers along each axis are k_m = 2*pi*m/L with integer m in
// [-n/2, n/2).  Spectral storage follows the real-to-complex layout: the last
// axis keeps only indices 0..n/2, the remaining axes are full.
class Grid {
public:
  static std::shared_ptr<const Grid> create(int dim, int n, double box_length);

  int dim() const { return dim_; }
  int n() const { return n_; }
  double length() const { return length_; }

  int nz() const { return n_ / 2 + 1; }  // stored size of the halved axis
  std::size_t point_count() const { return npts_; }
  std::size_t spec_count() const { return nspec_; }
  double dx() const { return length_ / n_; }
  double cell_volume() const;
  double volume() const;
  double k_fundamental() const { return k0_; }

  // 2/3-rule cutoff: modes with any |m_j| > dealias_limit() are dropped.
  int dealias_limit() const { return n_ / 3; }
  double k_max_dealiased() const { return dealias_limit() * k0_; }

  double coord(int i) const { return i * dx(); }
  int m_signed(int i) const { return i < n_ / 2 ? i : i - n_; }

  // Integer wavenumbers of the stored spectral entry s; unused axes get 0.
  void decode(std::size_t s, int m[3]) const;

  double ksq(std::size_t s) const { return ksq_[s]; }
  bool keep(std::size_t s) const { return keep_[s] != 0; }
  // Multiplicity of the stored entry in the full (unreduced) spectrum.
  double hermitian_weight(std::size_t s) const { return weight_[s]; }

  const std::vector<double>& ksq_table() const { return ksq_; }
  const std::vector<std::uint8_t>& dealias_mask() const { return keep_; }
  const std::vector<double>& weight_table() const { return weight_; }

private:
  Grid(int dim, int n, double box_length);

  int dim_;
  int n_;
  double length_;
  double k0_;
  std::size_t npts_;
  std::size_t nspec_;
  std::vector<double> ksq_;
  std::vector<std::uint8_t> keep_;
  std::vector<double> weight_;
};

using GridPtr = std::shared_ptr<const Grid>;

}  // namespace ch6

#include "grid.hpp"

#include <cmath>
#include <numbers>

namespace ch6 {

Grid::Grid(int dim, int n, double box_length)
    : dim_(dim), n_(n), length_(box_length) {
  k0_ = 2.0 * std::numbers::pi / length_;

  npts_ = 1;
  for (int d = 0; d < dim_; ++d) npts_ *= static_cast<std::size_t>(n_);
  nspec_ = static_cast<std::size_t>(nz());
  for (int d = 0; d < dim_ - 1; ++d) nspec_ *= static_cast<std::size_t>(n_);

  ksq_.resize(nspec_);
  keep_.resize(nspec_);
  weight_.resize(nspec_);
  const int cut = dealias_limit();
  int m[3];
  for (std::size_t s = 0; s < nspec_; ++s) {
    decode(s, m);
    double q = 0.0;
    bool in_band = true;
    for (int d = 0; d < dim_; ++d) {
      const double k = k0_ * m[d];
      q += k * k;
      if (m[d] > cut || m[d] < -cut) in_band = false;
    }
    ksq_[s] = q;
    keep_[s] = in_band ? 1 : 0;
    // Entries with 0 < m_last < n/2 stand for a conjugate pair; the m_last = 0
    // plane and the m_last = -n/2 plane are stored in full.
    const int ilast = static_cast<int>(s % static_cast<std::size_t>(nz()));
    weight_[s] = (ilast == 0 || ilast == n_ / 2) ? 1.0 : 2.0;
  }
}

std::shared_ptr<const Grid> Grid::create(int dim, int n, double box_length) {
  if (dim < 1 || dim > 3)
    throw ConfigError("grid.dim must be 1, 2 or 3 (got " + std::to_string(dim) + ")");
  if (n < 4 || n % 2 != 0)
    throw ConfigError("grid.n must be even and at least 4 (got " + std::to_string(n) + ")");
  if (!(box_length > 0.0) || !std::isfinite(box_length))
    throw ConfigError("grid.length must be positive and finite");
  return std::shared_ptr<const Grid>(new Grid(dim, n, box_length));
}

double Grid::cell_volume() const {
  double v = 1.0;
  for (int d = 0; d < dim_; ++d) v *= dx();
  return v;
}

double Grid::volume() const {
  double v = 1.0;
  for (int d = 0; d < dim_; ++d) v *= length_;
  return v;
}

void Grid::decode(std::size_t s, int m[3]) const {
  m[0] = m[1] = m[2] = 0;
  const std::size_t nzs = static_cast<std::size_t>(nz());
  const int ilast = static_cast<int>(s % nzs);
  std::size_t rest = s / nzs;
  // The halved axis stores m = 0..n/2 where index n/2 stands for m = -n/2.
  const int mlast = (ilast == n_ / 2) ? -n_ / 2 : ilast;
  if (dim_ == 1) {
    m[0] = mlast;
  } else if (dim_ == 2) {
    m[0] = m_signed(static_cast<int>(rest));
    m[1] = mlast;
  } else {
    m[1] = m_signed(static_cast<int>(rest % static_cast<std::size_t>(n_)));
    m[0] = m_signed(static_cast<int>(rest / static_cast<std::size_t>(n_)));
    m[2] = mlast;
  }
}

}  // namespace ch6

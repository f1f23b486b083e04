#include "model.hpp"

#include <cmath>
#include <limits>

#include "common.hpp"
#include "spectral_ops.hpp"

namespace ch6 {

RealField constitutive_eval(const RealField& u, ConstitutiveWhich which,
                            const PhysicalParams& p) {
  RealField out = u;
  switch (which) {
    case ConstitutiveWhich::F:
      for (double& x : out.v) x = p.f(x);
      break;
    case ConstitutiveWhich::FPrime:
      for (double& x : out.v) x = p.fprime(x);
      break;
    case ConstitutiveWhich::A:
      for (double& x : out.v) x = p.a(x);
      break;
    case ConstitutiveWhich::APrime:
      for (double& x : out.v) x = p.aprime(x);
      break;
    case ConstitutiveWhich::WAntiderivative:
      for (double& x : out.v) x = p.W(x);
      break;
  }
  return out;
}

ModelWork::ModelWork(GridPtr grid, bool oversample)
    : grid_(std::move(grid)), oversample_(oversample), fft_(grid_) {
  if (oversample_) {
    pgrid_ = Grid::create(grid_->dim(), 2 * grid_->n(), grid_->length());
    pfft_ = std::make_unique<Fourier>(pgrid_);
    lift_map_.assign(grid_->spec_count(), -1);
    const int n = grid_->n();
    const int nf = pgrid_->n();
    const std::size_t nzf = static_cast<std::size_t>(pgrid_->nz());
    int m[3];
    for (std::size_t s = 0; s < grid_->spec_count(); ++s) {
      grid_->decode(s, m);
      bool nyquist = false;
      for (int d = 0; d < grid_->dim(); ++d)
        if (m[d] == -n / 2) nyquist = true;
      if (nyquist) continue;  // dropped by dealiasing before any lift
      std::size_t sf = 0;
      for (int d = 0; d < grid_->dim() - 1; ++d) {
        const int i = m[d] >= 0 ? m[d] : m[d] + nf;
        sf = sf * static_cast<std::size_t>(nf) + static_cast<std::size_t>(i);
      }
      sf = sf * nzf + static_cast<std::size_t>(m[grid_->dim() - 1]);
      lift_map_[s] = static_cast<std::int64_t>(sf);
    }
  } else {
    pgrid_ = grid_;
  }
  u_ = RealField::zeros(pgrid_);
  lap_ = RealField::zeros(pgrid_);
  gsq_ = RealField::zeros(pgrid_);
  bracket_ = RealField::zeros(pgrid_);
  for (int d = 0; d < 3; ++d) grad_[d] = RealField::zeros(pgrid_);
  spec_a_ = SpectralField::zeros(pgrid_);
  spec_b_ = SpectralField::zeros(pgrid_);
}

double ModelWork::product_cell_volume() const { return pgrid_->cell_volume(); }

void ModelWork::lift(const SpectralField& coarse, SpectralField& fine) const {
  for (auto& z : fine.c) z = 0.0;
  for (std::size_t s = 0; s < lift_map_.size(); ++s)
    if (lift_map_[s] >= 0) fine.c[static_cast<std::size_t>(lift_map_[s])] = coarse.c[s];
}

void ModelWork::ingredients(const SpectralField& u_hat, bool need_derivatives) {
  Fourier& pf = oversample_ ? *pfft_ : fft_;
  if (oversample_)
    lift(u_hat, spec_b_);
  else
    spec_b_.c = u_hat.c;
  pf.inverse(spec_b_.c.data(), u_.v.data());
  if (!need_derivatives) return;

  spec_a_.c = spec_b_.c;
  apply_laplacian(spec_a_);
  pf.inverse(spec_a_.c.data(), lap_.v.data());

  const int dim = grid_->dim();
  for (int d = 0; d < dim; ++d) {
    spec_a_.c = spec_b_.c;
    apply_derivative(spec_a_, d, 1);
    pf.inverse(spec_a_.c.data(), grad_[d].v.data());
  }
  const std::size_t np = u_.v.size();
  for (std::size_t i = 0; i < np; ++i) {
    double g = grad_[0].v[i] * grad_[0].v[i];
    for (int d = 1; d < dim; ++d) g += grad_[d].v[i] * grad_[d].v[i];
    gsq_.v[i] = g;
  }
}

void ModelWork::bracket_to_coarse(SpectralField& out) {
  Fourier& pf = oversample_ ? *pfft_ : fft_;
  pf.forward(bracket_.v.data(), spec_a_.c.data());
  if (out.c.size() != grid_->spec_count()) out = SpectralField::zeros(grid_);
  if (oversample_) {
    for (std::size_t s = 0; s < lift_map_.size(); ++s)
      out.c[s] = lift_map_[s] >= 0 ? spec_a_.c[static_cast<std::size_t>(lift_map_[s])]
                                   : std::complex<double>(0.0);
  } else {
    out.c = spec_a_.c;
  }
  dealias(out);
}

namespace {

void require_kappa_form(const PhysicalParams& p, const char* op) {
  if (p.potential != PotentialKind::GompperSchick)
    throw ConfigError(std::string(op) + " uses the kappa formulation, which is only "
                      "defined for the GompperSchick model");
}

}  // namespace

SpectralField chemical_potential_hat(const SpectralField& u_hat,
                                     const PhysicalParams& p, ModelWork& w) {
  SpectralField d = u_hat;
  dealias(d);
  w.ingredients(d);
  const auto& u = w.u();
  const auto& lap = w.lap();
  const auto& gsq = w.gsq();
  auto& b = w.bracket();
  for (std::size_t i = 0; i < u.size(); ++i)
    b[i] = p.a(u[i]) * lap[i] + 0.5 * p.aprime(u[i]) * gsq[i] - p.f(u[i]);
  SpectralField bh = SpectralField::zeros(d.grid);
  w.bracket_to_coarse(bh);
  const Grid& g = *d.grid;
  for (std::size_t s = 0; s < g.spec_count(); ++s) {
    const double q = g.ksq(s);
    bh.c[s] = p.delta * q * q * d.c[s] - bh.c[s];
  }
  return bh;
}

RealField chemical_potential(const RealField& u, const PhysicalParams& p, ModelWork& w) {
  SpectralField mu = chemical_potential_hat(w.fft().forward(u), p, w);
  return w.fft().inverse(mu);
}

std::vector<RealField> mass_flux(const RealField& u, const PhysicalParams& p, ModelWork& w) {
  SpectralField mu = chemical_potential_hat(w.fft().forward(u), p, w);
  std::vector<RealField> flux;
  const int dim = u.grid->dim();
  for (int d = 0; d < dim; ++d) {
    SpectralField comp = mu;
    apply_derivative(comp, d, 1);
    RealField fd = w.fft().inverse(comp);
    for (double& x : fd.v) x *= -p.mobility;
    flux.push_back(std::move(fd));
  }
  return flux;
}

double free_energy_hat(const SpectralField& u_hat, const PhysicalParams& p, ModelWork& w) {
  SpectralField d = u_hat;
  dealias(d);
  w.ingredients(d);
  const auto& u = w.u();
  const auto& lap = w.lap();
  const auto& gsq = w.gsq();
  long double acc = 0.0L;
  for (std::size_t i = 0; i < u.size(); ++i)
    acc += p.W(u[i]) + 0.5 * p.a(u[i]) * gsq[i] + 0.5 * p.delta * lap[i] * lap[i];
  return static_cast<double>(acc) * w.product_cell_volume();
}

double free_energy(const RealField& u, const PhysicalParams& p, ModelWork& w) {
  return free_energy_hat(w.fft().forward(u), p, w);
}

SpectralField nonlinear_rhs_hat(const SpectralField& u_hat, const PhysicalParams& p,
                                ModelWork& w) {
  require_kappa_form(p, "nonlinear_rhs");
  SpectralField d = u_hat;
  dealias(d);
  w.ingredients(d);
  const auto& u = w.u();
  const auto& lap = w.lap();
  const auto& gsq = w.gsq();
  auto& b = w.bracket();
  const double k1 = p.kappa1, k2 = p.kappa2;
  for (std::size_t i = 0; i < u.size(); ++i)
    b[i] = k1 * (u[i] + k2) * (u[i] - k2) * lap[i] + k1 * u[i] * gsq[i] - p.f(u[i]);
  SpectralField nh = SpectralField::zeros(d.grid);
  w.bracket_to_coarse(nh);
  const Grid& g = *d.grid;
  for (std::size_t s = 0; s < g.spec_count(); ++s) nh.c[s] *= g.ksq(s);
  return nh;
}

RealField nonlinear_rhs(const RealField& u, const PhysicalParams& p, ModelWork& w) {
  return w.fft().inverse(nonlinear_rhs_hat(w.fft().forward(u), p, w));
}

double formulation_residual(const RealField& u, const PhysicalParams& p, ModelWork& w) {
  require_kappa_form(p, "formulation_residual");
  SpectralField d = w.fft().forward(u);
  dealias(d);
  w.ingredients(d);
  const auto& uv = w.u();
  const auto& lap = w.lap();
  const auto& gsq = w.gsq();
  auto& b = w.bracket();

  const double k1 = p.kappa1, k2 = p.kappa2;
  for (std::size_t i = 0; i < uv.size(); ++i)
    b[i] = k1 * (uv[i] + k2) * (uv[i] - k2) * lap[i] + k1 * uv[i] * gsq[i] - p.f(uv[i]);
  SpectralField bn = SpectralField::zeros(d.grid);
  w.bracket_to_coarse(bn);

  for (std::size_t i = 0; i < uv.size(); ++i)
    b[i] = p.a(uv[i]) * lap[i] + 0.5 * p.aprime(uv[i]) * gsq[i] - p.f(uv[i]);
  SpectralField bm = SpectralField::zeros(d.grid);
  w.bracket_to_coarse(bm);

  // kappa form: u_t = delta lap^3 u - kappa0 lap^2 u - lap[bn]
  // mu form:    u_t = lap(mu) = -|k|^2 (delta |k|^4 u_hat - bm)
  const Grid& g = *d.grid;
  long double num = 0.0L, den = 0.0L;
  for (std::size_t s = 0; s < g.spec_count(); ++s) {
    const double q = g.ksq(s);
    const double wgt = g.hermitian_weight(s);
    const std::complex<double> lhs = (-p.delta * q * q * q - p.kappa0 * q * q) * d.c[s] + q * bn.c[s];
    const std::complex<double> rhs = -p.delta * q * q * q * d.c[s] + q * bm.c[s];
    num += wgt * std::norm(lhs - rhs);
    den += wgt * std::norm(rhs);
  }
  if (den == 0.0L) return num == 0.0L ? 0.0 : std::numeric_limits<double>::infinity();
  return std::sqrt(static_cast<double>(num / den));
}

double mu_grad_sq(const SpectralField& u_hat, const PhysicalParams& p, ModelWork& w) {
  SpectralField mu = chemical_potential_hat(u_hat, p, w);
  const Grid& g = *u_hat.grid;
  long double acc = 0.0L;
  for (std::size_t s = 0; s < g.spec_count(); ++s)
    acc += g.hermitian_weight(s) * g.ksq(s) * std::norm(mu.c[s]);
  return static_cast<double>(acc) * g.volume();
}

}  // namespace ch6

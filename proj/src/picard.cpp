#include "picard.hpp"

#include <array>
#include <cmath>

#include "common.hpp"
#include "norms.hpp"
#include "spectral_ops.hpp"

namespace ch6 {

namespace {

// Coefficient fields frozen from one sample w of the previous iterate.
struct Coef {
  std::vector<double> lap_c;                 // kappa1 (w^2 - kappa2^2)
  std::array<std::vector<double>, 3> grad_c; // kappa1 w  d_j w
  std::vector<double> mult_c;                // (w-1)^2 (w+1) (w^2 + h0)
};

class Engine {
public:
  Engine(GridPtr grid, const PhysicalParams& p, const PicardConfig& cfg, double h)
      : grid_(std::move(grid)), p_(p), cfg_(cfg), fft_(grid_) {
    const std::size_t np = grid_->point_count();
    const std::size_t ns = grid_->spec_count();
    vphys_.resize(np);
    vlap_.resize(np);
    for (auto& gc : vgrad_) gc.resize(np);
    bracket_.resize(np);
    spec_ = SpectralField::zeros(grid_);
    for (auto* k : {&k1_, &k2_, &k3_, &k4_, &stage_}) *k = SpectralField::zeros(grid_);
    e_full_.resize(ns);
    e_half_.resize(ns);
    for (std::size_t s = 0; s < ns; ++s) {
      const double q = grid_->ksq(s);
      const double rate = p_.mobility * (p_.delta * q * q * q + p_.kappa0 * q * q);
      e_full_[s] = std::exp(-rate * h);
      e_half_[s] = std::exp(-rate * 0.5 * h);
    }
  }

  Fourier& fft() { return fft_; }

  // w == nullptr encodes the zero iterate.
  void bundle(const SpectralField* w, Coef& c) {
    const std::size_t np = grid_->point_count();
    c.lap_c.resize(np);
    c.mult_c.resize(np);
    for (int d = 0; d < grid_->dim(); ++d) c.grad_c[static_cast<std::size_t>(d)].resize(np);
    const double k1 = p_.kappa1, k2sq = p_.kappa2 * p_.kappa2, h0 = p_.h0;
    if (w == nullptr) {
      for (std::size_t i = 0; i < np; ++i) c.lap_c[i] = -k1 * k2sq;
      for (int d = 0; d < grid_->dim(); ++d)
        for (std::size_t i = 0; i < np; ++i) c.grad_c[static_cast<std::size_t>(d)][i] = 0.0;
      for (std::size_t i = 0; i < np; ++i) c.mult_c[i] = h0;
      return;
    }
    fft_.inverse(w->c.data(), vphys_.data());
    for (int d = 0; d < grid_->dim(); ++d) {
      spec_.c = w->c;
      apply_derivative(spec_, d, 1);
      fft_.inverse(spec_.c.data(), vgrad_[static_cast<std::size_t>(d)].data());
    }
    for (std::size_t i = 0; i < np; ++i) {
      const double wv = vphys_[i];
      c.lap_c[i] = k1 * (wv * wv - k2sq);
      c.mult_c[i] = (wv - 1.0) * (wv - 1.0) * (wv + 1.0) * (wv * wv + h0);
    }
    for (int d = 0; d < grid_->dim(); ++d) {
      auto& gc = c.grad_c[static_cast<std::size_t>(d)];
      const auto& gw = vgrad_[static_cast<std::size_t>(d)];
      for (std::size_t i = 0; i < np; ++i) gc[i] = k1 * vphys_[i] * gw[i];
    }
  }

  // G(v; w) = -lap[ lap_c lap v + grad_c . grad v - mult_c (v + 1) ]
  void apply_g(const SpectralField& v, const Coef& c, SpectralField& out) {
    const std::size_t np = grid_->point_count();
    fft_.inverse(v.c.data(), vphys_.data());
    spec_.c = v.c;
    apply_laplacian(spec_);
    fft_.inverse(spec_.c.data(), vlap_.data());
    for (int d = 0; d < grid_->dim(); ++d) {
      spec_.c = v.c;
      apply_derivative(spec_, d, 1);
      fft_.inverse(spec_.c.data(), vgrad_[static_cast<std::size_t>(d)].data());
    }
    for (std::size_t i = 0; i < np; ++i) {
      double b = c.lap_c[i] * vlap_[i] - c.mult_c[i] * (vphys_[i] + 1.0);
      for (int d = 0; d < grid_->dim(); ++d)
        b += c.grad_c[static_cast<std::size_t>(d)][i] * vgrad_[static_cast<std::size_t>(d)][i];
      bracket_[i] = b;
    }
    if (out.c.size() != grid_->spec_count()) out = SpectralField::zeros(grid_);
    fft_.forward(bracket_.data(), out.c.data());
    if (cfg_.dealias) dealias(out);
    for (std::size_t s = 0; s < grid_->spec_count(); ++s)
      out.c[s] *= p_.mobility * grid_->ksq(s);
  }

  void rk4_step(SpectralField& v, const Coef& c0, const Coef& ch, const Coef& c1, double h) {
    const std::size_t ns = grid_->spec_count();
    apply_g(v, c0, k1_);
    for (std::size_t s = 0; s < ns; ++s)
      stage_.c[s] = e_half_[s] * (v.c[s] + 0.5 * h * k1_.c[s]);
    apply_g(stage_, ch, k2_);
    for (std::size_t s = 0; s < ns; ++s)
      stage_.c[s] = e_half_[s] * v.c[s] + 0.5 * h * k2_.c[s];
    apply_g(stage_, ch, k3_);
    for (std::size_t s = 0; s < ns; ++s)
      stage_.c[s] = e_full_[s] * v.c[s] + h * e_half_[s] * k3_.c[s];
    apply_g(stage_, c1, k4_);
    for (std::size_t s = 0; s < ns; ++s)
      v.c[s] = e_full_[s] * v.c[s] +
               (h / 6.0) * (e_full_[s] * k1_.c[s] +
                            2.0 * e_half_[s] * (k2_.c[s] + k3_.c[s]) + k4_.c[s]);
  }

private:
  GridPtr grid_;
  const PhysicalParams& p_;
  const PicardConfig& cfg_;
  Fourier fft_;
  std::vector<double> vphys_, vlap_, bracket_;
  std::array<std::vector<double>, 3> vgrad_;
  SpectralField spec_, k1_, k2_, k3_, k4_, stage_;
  std::vector<double> e_full_, e_half_;
};

}  // namespace

PicardResult picard_local_solve(const RealField& u0, const PhysicalParams& p,
                                const PicardConfig& cfg) {
  if (p.potential != PotentialKind::GompperSchick)
    throw ConfigError("picard_local_solve linearizes the kappa formulation, which is "
                      "only defined for the GompperSchick model");
  if (!(cfg.t1 > 0.0)) throw ConfigError("picard.t1 must be positive");
  if (cfg.jmax < 1) throw ConfigError("picard.jmax must be >= 1");
  if (cfg.inner_steps < 2) throw ConfigError("picard.inner_steps must be >= 2");

  const GridPtr grid = u0.grid;
  const int m = cfg.inner_steps;
  const double h = cfg.t1 / m;

  {
    // stability of the explicitly treated coefficients at the active band
    const double kmax = cfg.dealias ? grid->k_max_dealiased()
                                    : grid->n() / 2 * grid->k_fundamental();
    const double k2 = kmax * kmax, k4 = k2 * k2;
    const double a = u0.max_abs();
    const double rate =
        p.mobility * (p.kappa1 * (a * a + p.kappa2 * p.kappa2) * k4 + (p.h0 + 4.0 * a) * k2);
    if (rate * h > 2.4) {
      const int need = static_cast<int>(std::ceil(cfg.t1 * rate / 2.4));
      throw ConfigError("picard.inner_steps = " + std::to_string(m) +
                        " is below the stability limit for this grid; use at least " +
                        std::to_string(need));
    }
  }

  Engine eng(grid, p, cfg, h);
  SpectralField u0h = eng.fft().forward(u0);
  if (cfg.dealias) dealias(u0h);

  const NormSpec h2 = NormSpec::sobolev(2.0, false);
  PicardResult res;
  std::vector<SpectralField> prev;  // full-step samples of the previous iterate
  bool prev_zero = true;

  Coef c0, chalf, c1;
  SpectralField mid = SpectralField::zeros(grid);
  SpectralField diff = SpectralField::zeros(grid);

  for (int j = 1; j <= cfg.jmax; ++j) {
    std::vector<SpectralField> cur;
    cur.reserve(static_cast<std::size_t>(m) + 1);
    cur.push_back(u0h);
    SpectralField v = u0h;

    if (prev_zero) {
      eng.bundle(nullptr, c0);
      for (int i = 0; i < m; ++i) {
        eng.rk4_step(v, c0, c0, c0, h);
        cur.push_back(v);
      }
    } else {
      eng.bundle(&prev[0], c0);
      for (int i = 0; i < m; ++i) {
        const auto& wa = prev[static_cast<std::size_t>(i)];
        const auto& wb = prev[static_cast<std::size_t>(i) + 1];
        for (std::size_t s = 0; s < mid.c.size(); ++s)
          mid.c[s] = 0.5 * (wa.c[s] + wb.c[s]);
        eng.bundle(&mid, chalf);
        eng.bundle(&wb, c1);
        eng.rk4_step(v, c0, chalf, c1, h);
        cur.push_back(v);
        std::swap(c0, c1);
      }
    }

    double sup = 0.0, dsup = 0.0;
    bool finite = true;
    for (std::size_t i = 0; i < cur.size(); ++i) {
      if (!cur[i].finite()) {
        finite = false;
        break;
      }
      sup = std::max(sup, norm(cur[i], h2));
      if (prev_zero) {
        dsup = sup;
      } else {
        for (std::size_t s = 0; s < diff.c.size(); ++s)
          diff.c[s] = cur[i].c[s] - prev[i].c[s];
        dsup = std::max(dsup, norm(diff, h2));
      }
    }
    if (!finite) {
      res.message = "iterate " + std::to_string(j) + " became non-finite";
      res.contraction = false;
      break;
    }
    res.sup_h2.push_back(sup);
    res.diff_sup.push_back(dsup);
    prev = std::move(cur);
    prev_zero = false;
  }

  if (!prev.empty()) res.final_iterate = eng.fft().inverse(prev.back());

  if (!res.diff_sup.empty()) {
    const double floor = 1e-13 * (1.0 + res.sup_h2.front());
    if (res.diff_sup.front() <= floor) {
      res.degenerate = true;
      res.contraction = true;
      res.message = "iterates coincide to roundoff; ratios are undefined";
    } else {
      for (std::size_t j = 0; j + 1 < res.diff_sup.size(); ++j) {
        if (res.diff_sup[j + 1] <= floor) {
          res.message = "differences reached the roundoff floor after " +
                        std::to_string(j + 1) + " iterates";
          break;
        }
        res.ratios.push_back(res.diff_sup[j + 1] / res.diff_sup[j]);
      }
      bool all = !res.ratios.empty();
      for (double r : res.ratios)
        if (!(r < 1.0)) all = false;
      res.contraction = all;
    }
  }
  return res;
}

}  // namespace ch6

#include "derham/potentials.hpp"

#include <cmath>
#include <numbers>

#include "derham/errors.hpp"
#include "derham/exterior.hpp"
#include "derham/fft.hpp"
#include "derham/kernels.hpp"
#include "derham/parallel.hpp"

namespace derham::potentials {
namespace {

std::vector<double> semigroup_multiplier(const Grid& g, double mu_t) {
  const auto& k2 = exterior::symbols(g).k2;
  std::vector<double> m(k2.size());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = std::exp(-mu_t * k2[i]);
  return m;
}

double spectral_l2sq(const SpectralForm& u) {
  double s = 0.0;
  for (const auto& c : u.comps)
    for (const auto& z : c) s += std::norm(z);
  double vol = 1.0;
  for (int i = 0; i < u.grid.n; ++i) vol *= 2.0 * u.grid.L;
  return s * vol;
}

}  // namespace

double heat_kernel_eval(std::span<const double> x, double t, double mu) {
  if (t <= 0.0) return 0.0;
  const int n = static_cast<int>(x.size());
  double r2 = 0.0;
  for (double c : x) r2 += c * c;
  return std::pow(4.0 * std::numbers::pi * mu * t, -0.5 * n) * std::exp(-r2 / (4.0 * mu * t));
}

double newton_kernel_eval(std::span<const double> x, int n) {
  double r2 = 0.0;
  for (double c : x) r2 += c * c;
  const double r = std::sqrt(r2);
  if (r == 0.0) throw Error(ErrorCode::SingularPoint, "Newton kernel evaluated at the origin");
  if (n == 2) return std::log(r) / std::numbers::pi;
  // sigma_n = 2 pi^{n/2} / Gamma(n/2)
  const double sigma_n = 2.0 * std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n);
  return std::pow(r, 2.0 - n) / (sigma_n * (2.0 - n));
}

void heat_semigroup_inplace(SpectralForm& u, double mu_t) {
  const auto m = semigroup_multiplier(u.grid, mu_t);
  const auto& k = kernels::active();
  for (auto& c : u.comps) k.cmul_real(c.size(), m.data(), c.data());
}

GridForm heat_semigroup(const GridForm& u, double mu_t) {
  SpectralForm s = fft::forward(u);
  heat_semigroup_inplace(s, mu_t);
  return fft::inverse(s);
}

Trajectory poisson_potential(const GridForm& u0, const HeatParams& p) {
  exterior::require_decay(u0);
  Trajectory out(p, u0.grid, u0.degree());
  out.slices[0] = u0;
  const SpectralForm s0 = fft::forward(u0);
  par::parallel_for(1, p.nt, [&](std::int64_t i) {
    SpectralForm s = s0;
    heat_semigroup_inplace(s, p.mu * out.time(static_cast<int>(i)));
    out.slices[i] = fft::inverse(s);
  });
  return out;
}

Trajectory volume_potential(const Trajectory& f) {
  const Grid& g = f.grid();
  const double tau = f.params.tau();
  const auto step = semigroup_multiplier(g, f.params.mu * tau);
  Trajectory out(f.params, g, f.degree());

  SpectralForm acc(g, f.degree());
  SpectralForm fprev = fft::forward(f.slices[0]);
  for (int i = 1; i < f.nt(); ++i) {
    SpectralForm fcur = fft::forward(f.slices[i]);
    for (int c = 0; c < acc.components(); ++c) {
      auto& a = acc.comps[c];
      const auto& fp = fprev.comps[c];
      const auto& fc = fcur.comps[c];
      for (std::size_t m = 0; m < a.size(); ++m)
        a[m] = step[m] * (a[m] + 0.5 * tau * fp[m]) + 0.5 * tau * fc[m];
    }
    out.slices[i] = fft::inverse(acc);
    fprev = std::move(fcur);
  }
  return out;
}

void leray_project_spectral(SpectralForm& u) {
  const Grid& g = u.grid;
  if (u.degree() < 1 || u.degree() > g.n - 1)
    throw Error(ErrorCode::InvalidProblem, "projection defined for 1 <= q <= n-1");
  SpectralForm exact = exterior::d(exterior::d_star(u));
  const auto& inv_k2 = exterior::symbols(g).inv_k2;
  const auto& k = kernels::active();
  for (int c = 0; c < u.components(); ++c) {
    k.cmul_real(exact.comps[c].size(), inv_k2.data(), exact.comps[c].data());
    auto& uc = u.comps[c];
    const auto& ec = exact.comps[c];
    for (std::size_t m = 0; m < uc.size(); ++m) uc[m] -= ec[m];
  }
}

GridForm leray_project(const GridForm& u) {
  SpectralForm s = fft::forward(u);
  leray_project_spectral(s);
  return fft::inverse(s);
}

Trajectory leray_project(const Trajectory& u) {
  Trajectory out(u.params, u.grid(), u.degree());
  par::parallel_for(0, u.nt(), [&](std::int64_t i) { out.slices[i] = leray_project(u.slices[i]); });
  return out;
}

GridForm phi_inverse_d(const GridForm& g, double closed_tol, bool* zero_mode_lost) {
  SpectralForm s = fft::forward(g);
  const SpectralForm closed_defect = exterior::d(s);
  const double gnorm = std::sqrt(spectral_l2sq(s));
  if (std::sqrt(spectral_l2sq(closed_defect)) > closed_tol * std::max(gnorm, 1e-300))
    throw Error(ErrorCode::NotClosed, "input is not closed, no potential exists");
  if (zero_mode_lost) {
    *zero_mode_lost = false;
    for (const auto& c : s.comps)
      if (std::abs(c[0]) > 1e-10) *zero_mode_lost = true;
  }
  SpectralForm pot = exterior::d_star(s);
  const auto& inv_k2 = exterior::symbols(g.grid).inv_k2;
  const auto& k = kernels::active();
  for (auto& c : pot.comps) k.cmul_real(c.size(), inv_k2.data(), c.data());
  return fft::inverse(pot);
}

}  // namespace derham::potentials

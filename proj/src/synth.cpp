#include "derham/synth.hpp"

#include <cmath>
#include <random>

#include "derham/fft.hpp"

namespace derham::synth {

GridForm band_limited(const Grid& g, int q, int kmax, std::uint64_t seed) {
  GridForm noise(g, q);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (auto& c : noise.comps)
    for (auto& v : c) v = normal(rng);

  SpectralForm s = fft::forward(noise);
  const std::int64_t npts = g.points();
  std::vector<bool> keep(npts);
  for (std::int64_t flat = 0; flat < npts; ++flat) {
    std::int64_t rest = flat;
    bool ok = true;
    for (int a = 0; a < g.n; ++a) {
      const int m = static_cast<int>(rest % g.N);
      rest /= g.N;
      const int shifted = (m <= g.N / 2) ? m : m - g.N;
      if (std::abs(shifted) > kmax || m == g.N / 2) ok = false;
    }
    keep[flat] = ok;
  }
  for (auto& c : s.comps)
    for (std::int64_t i = 0; i < npts; ++i)
      if (!keep[i]) c[i] = 0.0;

  GridForm u = fft::inverse(s);
  const double sup = u.sup_norm();
  if (sup > 0.0) u.scale(1.0 / sup);
  u.grid.mode = g.mode;
  return u;
}

GridForm decaying_random(const Grid& g, int q, int kmax, std::uint64_t seed, double sigma) {
  GridForm u = band_limited(g, q, kmax, seed);
  // Gaussian envelope with a quintic cutoff reaching exactly zero before the
  // boundary shell |x|_inf >= L/2, so estimator decay gates are satisfied.
  const double r0 = 0.35 * g.L, r1 = 0.48 * g.L;
  const std::int64_t npts = g.points();
  for (std::int64_t flat = 0; flat < npts; ++flat) {
    const auto idx = g.unflatten(flat);
    double r2 = 0.0;
    for (int a = 0; a < g.n; ++a) {
      const double x = g.coord(idx[a]);
      r2 += x * x;
    }
    const double r = std::sqrt(r2);
    double env = std::exp(-r2 / (sigma * sigma));
    if (r >= r1) {
      env = 0.0;
    } else if (r > r0) {
      const double s = (r - r0) / (r1 - r0);
      env *= 1.0 - s * s * s * (10.0 - 15.0 * s + 6.0 * s * s);
    }
    for (auto& c : u.comps) c[flat] *= env;
  }
  const double sup = u.sup_norm();
  if (sup > 0.0) u.scale(1.0 / sup);
  return u;
}

GridForm gaussian_bump(const Grid& g, int q, double amplitude, double sigma) {
  return GridForm::sample(g, q, [&](int c, const double* x) {
    double r2 = 0.0;
    for (int a = 0; a < g.n; ++a) r2 += x[a] * x[a];
    return amplitude / (1.0 + c) * std::exp(-r2 / (sigma * sigma));
  });
}

}  // namespace derham::synth

#include "derham/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <random>

#include "derham/errors.hpp"
#include "derham/exterior.hpp"
#include "derham/kernels.hpp"
#include "derham/parallel.hpp"

namespace derham::spaces {
namespace {

constexpr std::uint64_t kPairSeed = 0x20260809ULL;

struct Pair {
  std::int64_t i, j;
  double dist;
  double wmax;
};

struct PointCache {
  std::vector<double> weight;  // w(x) per flat point
  std::vector<double> radius;  // |x|
};

const PointCache& point_cache(const Grid& g) {
  static std::map<std::tuple<int, int, double>, PointCache> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  const auto key = std::make_tuple(g.n, g.N, g.L);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  PointCache pc;
  const std::int64_t npts = g.points();
  pc.weight.resize(npts);
  pc.radius.resize(npts);
  for (std::int64_t flat = 0; flat < npts; ++flat) {
    const auto idx = g.unflatten(flat);
    double r2 = 0.0;
    for (int a = 0; a < g.n; ++a) {
      const double c = g.coord(idx[a]);
      r2 += c * c;
    }
    pc.radius[flat] = std::sqrt(r2);
    pc.weight[flat] = std::sqrt(1.0 + r2);
  }
  return cache.emplace(key, std::move(pc)).first->second;
}

double point_distance(const Grid& g, std::int64_t i, std::int64_t j) {
  const auto a = g.unflatten(i), b = g.unflatten(j);
  double d2 = 0.0;
  for (int ax = 0; ax < g.n; ++ax) {
    const double d = g.coord(a[ax]) - g.coord(b[ax]);
    d2 += d * d;
  }
  return std::sqrt(d2);
}

// Pair set for the weighted seminorm: the first point x carries the
// constraint |x-y| <= |x|/2. Distances are straight-line (free-space
// emulation), not periodic.
const std::vector<Pair>& seminorm_pairs(const Grid& g, int budget) {
  static std::map<std::tuple<int, int, double, int>, std::vector<Pair>> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  const auto key = std::make_tuple(g.n, g.N, g.L, budget);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  const PointCache& pc = point_cache(g);
  const std::int64_t npts = g.points();
  std::vector<Pair> pairs;

  auto push = [&](std::int64_t i, std::int64_t j) {
    if (i == j) return;
    const double dist = point_distance(g, i, j);
    if (dist > pc.radius[i] / 2.0) return;
    pairs.push_back({i, j, dist, std::max(pc.weight[i], pc.weight[j])});
  };

  if (g.n == 2 && g.N <= 32) {
    for (std::int64_t i = 0; i < npts; ++i)
      for (std::int64_t j = 0; j < npts; ++j) push(i, j);
  } else {
    // all nearest-neighbor pairs (both orientations of the x-role)
    for (std::int64_t i = 0; i < npts; ++i) {
      const auto idx = g.unflatten(i);
      for (int ax = 0; ax < g.n; ++ax) {
        if (idx[ax] + 1 >= g.N) continue;
        auto up = idx;
        up[ax]++;
        const std::int64_t j = g.flatten(up);
        push(i, j);
        push(j, i);
      }
    }
    std::mt19937_64 rng(kPairSeed);
    std::uniform_int_distribution<std::int64_t> pick(0, npts - 1);
    int accepted = 0, attempts = 0;
    const int max_attempts = budget * 20;
    while (accepted < budget && attempts < max_attempts) {
      ++attempts;
      const std::int64_t i = pick(rng), j = pick(rng);
      if (i == j) continue;
      const double dist = point_distance(g, i, j);
      if (dist > pc.radius[i] / 2.0) continue;
      pairs.push_back({i, j, dist, std::max(pc.weight[i], pc.weight[j])});
      ++accepted;
    }
  }
  return cache.emplace(key, std::move(pairs)).first->second;
}

std::vector<double> weight_power(const Grid& g, double exponent) {
  const PointCache& pc = point_cache(g);
  std::vector<double> w(pc.weight.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = std::pow(pc.weight[i], exponent);
  return w;
}

// nearest-neighbor-only seminorm, cheap enough to run per Picard sweep
double nn_seminorm(const GridForm& u, double lambda, double delta) {
  const Grid& g = u.grid;
  const PointCache& pc = point_cache(g);
  const double h = g.h();
  const double hlam = std::pow(h, lambda);
  const std::int64_t npts = g.points();
  return par::reduce_max(0, npts, [&](std::int64_t i) {
    const auto idx = g.unflatten(i);
    double best = 0.0;
    for (int ax = 0; ax < g.n; ++ax) {
      if (idx[ax] + 1 >= g.N) continue;
      auto up = idx;
      up[ax]++;
      const std::int64_t j = g.flatten(up);
      // constraint |x-y| <= |x|/2 with the larger-radius point in the x role
      if (h > std::max(pc.radius[i], pc.radius[j]) / 2.0) continue;
      double m = 0.0;
      for (int c = 0; c < u.components(); ++c)
        m = std::max(m, std::fabs(u.comps[c][i] - u.comps[c][j]));
      best = std::max(best, std::pow(std::max(pc.weight[i], pc.weight[j]), delta + lambda) * m / hlam);
    }
    return best;
  });
}

double weighted_sup_single(const GridForm& u, double exponent) {
  const auto w = weight_power(u.grid, exponent);
  const auto& k = kernels::active();
  double m = 0.0;
  for (const auto& c : u.comps) m = std::max(m, k.weighted_abs_max(c.size(), w.data(), c.data()));
  return m;
}

// sup_x w^exponent |a(x) - b(x)|, max over components
double weighted_sup_diff(const GridForm& a, const GridForm& b, const std::vector<double>& w) {
  const std::int64_t npts = a.grid.points();
  return par::reduce_max(0, npts, [&](std::int64_t i) {
    double m = 0.0;
    for (int c = 0; c < a.components(); ++c)
      m = std::max(m, std::fabs(a.comps[c][i] - b.comps[c][i]));
    return w[i] * m;
  });
}

void enumerate_alphas(int n, int max_order, std::vector<std::vector<int>>& out) {
  std::vector<int> alpha(n, 0);
  std::function<void(int, int)> rec = [&](int axis, int remaining) {
    if (axis == n) {
      out.push_back(alpha);
      return;
    }
    for (int a = 0; a <= remaining; ++a) {
      alpha[axis] = a;
      rec(axis + 1, remaining - a);
    }
    alpha[axis] = 0;
  };
  rec(0, max_order);
}

int order(const std::vector<int>& alpha) {
  int s = 0;
  for (int a : alpha) s += a;
  return s;
}

std::string alpha_label(const std::vector<int>& alpha) {
  std::string s = "d^(";
  for (std::size_t i = 0; i < alpha.size(); ++i)
    s += (i ? "," : "") + std::to_string(alpha[i]);
  return s + ")";
}

Trajectory time_derivative_n(const Trajectory& u, int j) {
  Trajectory v = u;
  for (int rep = 0; rep < j; ++rep) v = time_derivative(v);
  return v;
}

// One C^{s(0,lambda,delta')} block: sup-in-t spatial norm + time quotient.
void aniso_block(const Trajectory& v, double lambda, double dprime, int pair_budget,
                 const std::string& label, NormReport& report) {
  double spatial = 0.0;
  for (const auto& slice : v.slices) {
    double val = weighted_sup_single(slice, dprime);
    if (lambda > 0.0) {
      val += holder_seminorm(slice, lambda, dprime, pair_budget);
      val += local_holder_norm(slice, lambda);
    }
    spatial = std::max(spatial, val);
  }
  report.add(label + " sup_t", spatial);
  if (lambda > 0.0 && v.nt() >= 2) {
    const auto w = weight_power(v.grid(), dprime);
    double quotient = 0.0;
    for (int a = 0; a < v.nt(); ++a)
      for (int b = a + 1; b < v.nt(); ++b) {
        const double dt = v.time(b) - v.time(a);
        quotient = std::max(quotient, weighted_sup_diff(v.slices[a], v.slices[b], w) /
                                          std::pow(dt, lambda / 2.0));
      }
    report.add(label + " t-quotient", quotient);
  }
}

// sum_{|alpha|+2j<=2s} of aniso blocks for d^alpha d_t^j u at delta+|alpha|
void aniso_terms(const Trajectory& u, int s, double lambda, double delta, int pair_budget,
                 const std::string& prefix, NormReport& report) {
  if (u.nt() < 2 * s + 2)
    throw Error(ErrorCode::TooFewTimeSlices,
                "anisotropic norm of smoothness " + std::to_string(s) + " needs " +
                    std::to_string(2 * s + 2) + " slices");
  for (int j = 0; 2 * j <= 2 * s; ++j) {
    const Trajectory vt = time_derivative_n(u, j);
    std::vector<std::vector<int>> alphas;
    enumerate_alphas(u.grid().n, 2 * s - 2 * j, alphas);
    for (const auto& alpha : alphas) {
      Trajectory v(vt.params, vt.grid(), vt.degree());
      if (order(alpha) == 0) {
        v = vt;
      } else {
        for (int i = 0; i < vt.nt(); ++i)
          v.slices[i] = exterior::partial_derivative(vt.slices[i], alpha);
      }
      aniso_block(v, lambda, delta + order(alpha), pair_budget,
                  prefix + alpha_label(alpha) + " dt^" + std::to_string(j), report);
    }
  }
}

}  // namespace

double weight(std::span<const double> x) {
  double r2 = 0.0;
  for (double c : x) r2 += c * c;
  return std::sqrt(1.0 + r2);
}

double weight_pair(std::span<const double> x, std::span<const double> y) {
  return std::max(weight(x), weight(y));
}

void NormParams::validate() const {
  if (s < 0 || k < 0) throw Error(ErrorCode::ConfigError, "norm smoothness indices must be >= 0");
  if (!(lambda > 0.0 && lambda <= 1.0))
    throw Error(ErrorCode::ConfigError, "lambda must lie in (0,1]");
  if (lambda_prime != 0.0 && !(lambda < lambda_prime && lambda_prime < 1.0))
    throw Error(ErrorCode::ConfigError, "lambda' must lie in (lambda,1)");
  if (delta < 0.0) throw Error(ErrorCode::ConfigError, "delta must be >= 0");
}

void NormReport::add(std::string label, double value) {
  terms.push_back({std::move(label), value});
  total += value;
}

double NormReport::term(const std::string& label) const {
  for (const auto& t : terms)
    if (t.label == label) return t.value;
  return 0.0;
}

NormReport weighted_sup_norm(const GridForm& u, const NormParams& p) {
  p.validate();
  if (p.s >= 1) exterior::require_decay(u, p.decay_tol);
  NormReport report;
  std::vector<std::vector<int>> alphas;
  enumerate_alphas(u.grid.n, p.s, alphas);
  for (const auto& alpha : alphas) {
    const GridForm du =
        order(alpha) == 0 ? u : exterior::partial_derivative(u, alpha);
    report.add(alpha_label(alpha), weighted_sup_single(du, p.delta + order(alpha)));
  }
  return report;
}

double holder_seminorm(const GridForm& u, double lambda, double delta, int pair_budget) {
  const auto& pairs = seminorm_pairs(u.grid, pair_budget);
  const std::int64_t npairs = static_cast<std::int64_t>(pairs.size());
  return par::reduce_max(0, npairs, [&](std::int64_t pi) {
    const Pair& pr = pairs[pi];
    double m = 0.0;
    for (int c = 0; c < u.components(); ++c)
      m = std::max(m, std::fabs(u.comps[c][pr.i] - u.comps[c][pr.j]));
    return std::pow(pr.wmax, delta + lambda) * m / std::pow(pr.dist, lambda);
  });
}

double local_holder_norm(const GridForm& u, double lambda) {
  const PointCache& pc = point_cache(u.grid);
  std::vector<std::int64_t> ball;
  for (std::int64_t i = 0; i < u.grid.points(); ++i)
    if (pc.radius[i] <= 0.5) ball.push_back(i);
  double sup = 0.0, quot = 0.0;
  for (std::int64_t i : ball)
    for (int c = 0; c < u.components(); ++c) sup = std::max(sup, std::fabs(u.comps[c][i]));
  for (std::size_t a = 0; a < ball.size(); ++a)
    for (std::size_t b = a + 1; b < ball.size(); ++b) {
      const double dist = point_distance(u.grid, ball[a], ball[b]);
      double m = 0.0;
      for (int c = 0; c < u.components(); ++c)
        m = std::max(m, std::fabs(u.comps[c][ball[a]] - u.comps[c][ball[b]]));
      quot = std::max(quot, m / std::pow(dist, lambda));
    }
  return sup + quot;
}

NormReport c_norm(const GridForm& u, const NormParams& p) {
  p.validate();
  if (p.s >= 1) exterior::require_decay(u, p.decay_tol);
  NormReport report;
  std::vector<std::vector<int>> alphas;
  enumerate_alphas(u.grid.n, p.s, alphas);
  for (const auto& alpha : alphas) {
    const GridForm du =
        order(alpha) == 0 ? u : exterior::partial_derivative(u, alpha);
    const double dprime = p.delta + order(alpha);
    double val = weighted_sup_single(du, dprime);
    if (p.lambda > 0.0) {
      val += holder_seminorm(du, p.lambda, dprime, p.pair_budget);
      val += local_holder_norm(du, p.lambda);
    }
    report.add(alpha_label(alpha), val);
  }
  return report;
}

double lp_norm(const GridForm& u, double p) {
  if (!(p >= 1.0)) throw Error(ErrorCode::ConfigError, "L^p norm needs p >= 1");
  const std::int64_t npts = u.grid.points();
  const double sum = par::reduce_sum(0, npts, [&](std::int64_t i) {
    double mag2 = 0.0;
    for (int c = 0; c < u.components(); ++c) mag2 += u.comps[c][i] * u.comps[c][i];
    return std::pow(mag2, p / 2.0);
  });
  return std::pow(u.grid.cell_measure() * sum, 1.0 / p);
}

NormReport aniso_norm(const Trajectory& u, const NormParams& p) {
  p.validate();
  if (p.s >= 1)
    for (const auto& s : u.slices) exterior::require_decay(s, p.decay_tol);
  NormReport report;
  aniso_terms(u, p.s, p.lambda, p.delta, p.pair_budget, "", report);
  return report;
}

NormReport f_norm(const Trajectory& u, const NormParams& p) {
  p.validate();
  if (!(p.lambda_prime > p.lambda))
    throw Error(ErrorCode::ConfigError, "F-norm needs lambda' > lambda");
  NormReport report;
  for (int pass = 0; pass < 2; ++pass) {
    const int kk = pass == 0 ? p.k + 1 : p.k;
    const double lam = pass == 0 ? p.lambda : p.lambda_prime;
    const std::string tag = pass == 0 ? "[k+1,lambda] " : "[k,lambda'] ";
    std::vector<std::vector<int>> betas;
    enumerate_alphas(u.grid().n, kk, betas);
    for (const auto& beta : betas) {
      Trajectory v(u.params, u.grid(), u.degree());
      if (order(beta) == 0) {
        v = u;
      } else {
        for (int i = 0; i < u.nt(); ++i)
          v.slices[i] = exterior::partial_derivative(u.slices[i], beta);
      }
      aniso_terms(v, p.s, lam, p.delta + order(beta), p.pair_budget,
                  tag + alpha_label(beta) + " ", report);
    }
  }
  return report;
}

double proxy_norm(const Trajectory& u, double lambda, double delta) {
  double spatial = 0.0;
  for (const auto& slice : u.slices) {
    double val = weighted_sup_single(slice, delta);
    val += nn_seminorm(slice, lambda, delta);
    spatial = std::max(spatial, val);
  }
  double quotient = 0.0;
  if (u.nt() >= 2) {
    const auto w = weight_power(u.grid(), delta);
    for (int a = 0; a < u.nt(); ++a)
      for (int stride = 1; a + stride < u.nt(); stride *= 2) {
        const int b = a + stride;
        const double dt = u.time(b) - u.time(a);
        quotient = std::max(quotient, weighted_sup_diff(u.slices[a], u.slices[b], w) /
                                          std::pow(dt, lambda / 2.0));
      }
  }
  return spatial + quotient;
}

}  // namespace derham::spaces

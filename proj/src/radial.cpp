#include "derham/radial.hpp"

#include <algorithm>
#include <cmath>

#include "derham/errors.hpp"
#include "derham/parallel.hpp"

namespace derham::radial {
namespace {

constexpr double kBlowupThreshold = 1e8;

void rhs_into(const RadialProfile& p, std::vector<double>& out) {
  const int nr = p.nr();
  const double dr = p.dr;
  const double inv_dr2 = 1.0 / (dr * dr);
  const double inv_2dr = 0.5 / dr;
  out.resize(nr);
  for (int i = 0; i < nr; ++i) {
    const double vm = (i == 0) ? p.v[0] : p.v[i - 1];          // even ghost at the origin
    const double vp = (i == nr - 1) ? -p.v[nr - 1] : p.v[i + 1];  // Dirichlet face at R
    const double r = p.r(i);
    const double v = p.v[i];
    const double v_r = (vp - vm) * inv_2dr;
    const double v_rr = (vp - 2.0 * v + vm) * inv_dr2;
    out[i] = v_rr + (p.n + 1) / r * v_r + (p.n + 2) * v * v + 3.0 * r * v * v_r;
  }
}

// Cash-Karp embedded RK45 step for the self-similar ODE written as a
// first-order system in (w, w').
struct OdeState {
  double w, dw;
};

OdeState ode_rhs(double y, const OdeState& s, double kappa, int n, double zero_coeff) {
  const double w2 = -((n + 1) / y) * s.dw + kappa * y * s.dw - (n + 2) * s.w * s.w -
                    3.0 * y * s.w * s.dw + zero_coeff * kappa * s.w;
  return {s.dw, w2};
}

}  // namespace

double RadialProfile::max_abs() const {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::fabs(x));
  return m;
}

void RadialProfile::validate() const {
  if (nr() < 16) throw Error(ErrorCode::MeshTooShort, "radial mesh needs at least 16 cells");
  if (!(dr > 0.0)) throw Error(ErrorCode::MeshTooShort, "radial spacing must be positive");
  for (double x : v)
    if (!std::isfinite(x)) throw Error(ErrorCode::ShapeMismatch, "non-finite radial profile");
}

double RadialProfile::interpolate(double radius) const {
  // index space with even extension across r = 0: v(-r) = v(r)
  const double s = radius / dr - 0.5;
  int i0 = static_cast<int>(std::floor(s)) - 1;
  double acc = 0.0;
  for (int m = 0; m < 4; ++m) {
    const int idx = i0 + m;
    const int folded = (idx < 0) ? (-idx - 1) : idx;
    const double value = (folded < nr()) ? v[folded] : 0.0;
    double basis = 1.0;
    for (int l = 0; l < 4; ++l) {
      if (l == m) continue;
      basis *= (s - (i0 + l)) / static_cast<double>(m - l);
    }
    acc += value * basis;
  }
  return acc;
}

RadialProfile sample_profile(int n, int nr, double R,
                             const std::function<double(double)>& v_of_r) {
  RadialProfile p;
  p.n = n;
  p.dr = R / nr;
  p.v.resize(nr);
  for (int i = 0; i < nr; ++i) p.v[i] = v_of_r(p.r(i));
  p.validate();
  return p;
}

RadialProfile radial_rhs(const RadialProfile& v) {
  v.validate();
  RadialProfile out = v;
  rhs_into(v, out.v);
  return out;
}

EvolveResult radial_evolve(const RadialProfile& v0, double t_final, double dt,
                           int snapshot_stride) {
  v0.validate();
  if (!(dt > 0.0) || dt > 0.4 * v0.dr * v0.dr)
    throw Error(ErrorCode::StabilityViolation, "explicit step needs dt <= 0.4 dr^2");

  EvolveResult res;
  RadialProfile p = v0;
  const int nr = p.nr();
  std::vector<double> k1, k2, k3, k4;
  RadialProfile stage = p;

  const auto steps = static_cast<long long>(std::ceil(t_final / dt));
  res.final = p;
  res.max_series.emplace_back(p.t, p.max_abs());
  if (snapshot_stride > 0) res.snapshots.push_back(p);
  for (long long step = 0; step < steps; ++step) {
    rhs_into(p, k1);
    for (int i = 0; i < nr; ++i) stage.v[i] = p.v[i] + 0.5 * dt * k1[i];
    rhs_into(stage, k2);
    for (int i = 0; i < nr; ++i) stage.v[i] = p.v[i] + 0.5 * dt * k2[i];
    rhs_into(stage, k3);
    for (int i = 0; i < nr; ++i) stage.v[i] = p.v[i] + dt * k3[i];
    rhs_into(stage, k4);
    for (int i = 0; i < nr; ++i)
      p.v[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    p.t = v0.t + (step + 1) * dt;

    const double m = p.max_abs();
    if (!std::isfinite(m) || m > kBlowupThreshold) {
      res.status = EvolveResult::Status::kBlowUp;
      res.blowup_time = p.t;
      return res;
    }
    res.final = p;
    res.max_series.emplace_back(p.t, m);
    if (snapshot_stride > 0 && (step + 1) % snapshot_stride == 0) res.snapshots.push_back(p);
  }
  res.status = EvolveResult::Status::kCompleted;
  return res;
}

SelfSimilarProfile selfsim_integrate(double gamma, double kappa, int n, const OdeOptions& opt,
                                     IntegrateOutcome* outcome) {
  if (gamma < 0.0) throw Error(ErrorCode::InvalidProblem, "gamma must be >= 0");
  if (!(kappa > 0.0)) throw Error(ErrorCode::InvalidProblem, "kappa must be positive");
  const double zero_coeff = opt.coeff_2kw ? 2.0 : 1.0;

  SelfSimilarProfile prof;
  prof.n = n;
  prof.gamma = gamma;
  prof.kappa = kappa;

  // series start w = gamma + a y^2 resolving the origin singularity
  const double a = (zero_coeff * kappa * gamma - (n + 2) * gamma * gamma) / (2.0 * (n + 2));
  double y = opt.y_start;
  OdeState s{gamma + a * y * y, 2.0 * a * y};
  double h = 1e-4;

  // Cash-Karp coefficients
  static const double c2 = 1. / 5, c3 = 3. / 10, c4 = 3. / 5, c5 = 1., c6 = 7. / 8;
  static const double a21 = 1. / 5;
  static const double a31 = 3. / 40, a32 = 9. / 40;
  static const double a41 = 3. / 10, a42 = -9. / 10, a43 = 6. / 5;
  static const double a51 = -11. / 54, a52 = 5. / 2, a53 = -70. / 27, a54 = 35. / 27;
  static const double a61 = 1631. / 55296, a62 = 175. / 512, a63 = 575. / 13824,
                      a64 = 44275. / 110592, a65 = 253. / 4096;
  static const double b1 = 37. / 378, b3 = 250. / 621, b4 = 125. / 594, b6 = 512. / 1771;
  static const double e1 = b1 - 2825. / 27648, e3 = b3 - 18575. / 48384,
                      e4 = b4 - 13525. / 55296, e5 = -277. / 14336, e6 = b6 - 1. / 4;

  prof.y.push_back(y);
  prof.w.push_back(s.w);
  IntegrateOutcome result = IntegrateOutcome::kReached;

  while (y < opt.y_max) {
    h = std::min(h, opt.y_max - y);
    const OdeState k1 = ode_rhs(y, s, kappa, n, zero_coeff);
    const OdeState s2{s.w + h * a21 * k1.w, s.dw + h * a21 * k1.dw};
    const OdeState k2 = ode_rhs(y + c2 * h, s2, kappa, n, zero_coeff);
    const OdeState s3{s.w + h * (a31 * k1.w + a32 * k2.w), s.dw + h * (a31 * k1.dw + a32 * k2.dw)};
    const OdeState k3 = ode_rhs(y + c3 * h, s3, kappa, n, zero_coeff);
    const OdeState s4{s.w + h * (a41 * k1.w + a42 * k2.w + a43 * k3.w),
                      s.dw + h * (a41 * k1.dw + a42 * k2.dw + a43 * k3.dw)};
    const OdeState k4 = ode_rhs(y + c4 * h, s4, kappa, n, zero_coeff);
    const OdeState s5{s.w + h * (a51 * k1.w + a52 * k2.w + a53 * k3.w + a54 * k4.w),
                      s.dw + h * (a51 * k1.dw + a52 * k2.dw + a53 * k3.dw + a54 * k4.dw)};
    const OdeState k5 = ode_rhs(y + c5 * h, s5, kappa, n, zero_coeff);
    const OdeState s6{
        s.w + h * (a61 * k1.w + a62 * k2.w + a63 * k3.w + a64 * k4.w + a65 * k5.w),
        s.dw + h * (a61 * k1.dw + a62 * k2.dw + a63 * k3.dw + a64 * k4.dw + a65 * k5.dw)};
    const OdeState k6 = ode_rhs(y + c6 * h, s6, kappa, n, zero_coeff);

    const OdeState next{s.w + h * (b1 * k1.w + b3 * k3.w + b4 * k4.w + b6 * k6.w),
                        s.dw + h * (b1 * k1.dw + b3 * k3.dw + b4 * k4.dw + b6 * k6.dw)};
    const double err_w = h * (e1 * k1.w + e3 * k3.w + e4 * k4.w + e5 * k5.w + e6 * k6.w);
    const double err_dw = h * (e1 * k1.dw + e3 * k3.dw + e4 * k4.dw + e5 * k5.dw + e6 * k6.dw);
    const double scale_w = opt.abs_tol + opt.rel_tol * std::max(std::fabs(s.w), std::fabs(next.w));
    const double scale_dw =
        opt.abs_tol + opt.rel_tol * std::max(std::fabs(s.dw), std::fabs(next.dw));
    const double err = std::max(std::fabs(err_w) / scale_w, std::fabs(err_dw) / scale_dw);

    if (err <= 1.0) {
      y += h;
      s = next;
      prof.y.push_back(y);
      prof.w.push_back(s.w);
      if (!std::isfinite(s.w) || std::fabs(s.w) > opt.overflow ||
          std::fabs(s.dw) > opt.overflow / std::max(1.0, y)) {
        result = IntegrateOutcome::kOverflow;
        break;
      }
      if (s.w < 0.0) {
        result = IntegrateOutcome::kNegative;
        break;
      }
    }
    const double grow = (err > 0.0) ? 0.9 * std::pow(err, -0.2) : 5.0;
    h *= std::clamp(grow, 0.2, 5.0);
    h = std::max(h, 1e-12);
  }

  if (result == IntegrateOutcome::kReached && !prof.y.empty()) {
    const double yl = prof.y.back();
    prof.decay_constant = yl * yl * prof.w.back();
  }
  if (outcome) *outcome = result;
  return prof;
}

SelfSimilarProfile selfsim_shoot(double gamma, int n, double y_max, bool coeff_2kw,
                                 double kappa_rel_tol) {
  if (!(gamma > 0.0)) throw Error(ErrorCode::InvalidProblem, "shooting needs gamma > 0");
  OdeOptions opt;
  opt.y_max = y_max;
  opt.coeff_2kw = coeff_2kw;

  // classification: overflow branch vs the branch where the matching
  // functional y^3 w' + 2 y^2 w (zero on the pure y^-2 tail) has flipped
  auto classify = [&](double kappa) {
    IntegrateOutcome out;
    SelfSimilarProfile p = selfsim_integrate(gamma, kappa, n, opt, &out);
    if (out == IntegrateOutcome::kOverflow) return +1;
    if (out == IntegrateOutcome::kNegative) return -1;
    const std::size_t m = p.y.size() - 1;
    const double y = p.y[m];
    const double dw = (p.w[m] - p.w[m - 1]) / (p.y[m] - p.y[m - 1]);
    const double match = y * y * y * dw + 2.0 * y * y * p.w[m];
    return (match >= 0.0) ? +1 : -1;
  };

  const double lo = 1e-3, hi = 1e3;
  const int scan = 61;
  double ka = lo;
  int sa = classify(ka);
  double kb = 0.0;
  int sb = 0;
  bool bracketed = false;
  for (int i = 1; i < scan; ++i) {
    kb = lo * std::pow(hi / lo, static_cast<double>(i) / (scan - 1));
    sb = classify(kb);
    if (sb != sa) {
      bracketed = true;
      break;
    }
    ka = kb;
    sa = sb;
  }
  if (!bracketed)
    throw Error(ErrorCode::NoBracket, "no sign change of the matching functional in [1e-3,1e3]");

  while ((kb - ka) > kappa_rel_tol * kb) {
    const double km = std::sqrt(ka * kb);
    if (classify(km) == sa)
      ka = km;
    else
      kb = km;
  }

  const double kappa = 0.5 * (ka + kb);
  IntegrateOutcome out;
  SelfSimilarProfile prof = selfsim_integrate(gamma, kappa, n, opt, &out);
  prof.matched = (out == IntegrateOutcome::kReached);
  return prof;
}

GridForm lift_radial(const RadialProfile& v, const Grid& grid) {
  v.validate();
  if (v.R() < std::sqrt(static_cast<double>(grid.n)) * grid.L)
    throw Error(ErrorCode::MeshTooShort, "radial mesh must reach the box corners");
  if (grid.n != v.n)
    throw Error(ErrorCode::ShapeMismatch, "profile dimension does not match the grid");

  const double r0 = 0.8 * grid.L, r1 = 0.95 * grid.L;
  auto window = [&](double r) {
    if (r <= r0) return 1.0;
    if (r >= r1) return 0.0;
    const double s = (r - r0) / (r1 - r0);
    return 1.0 - s * s * s * (10.0 - 15.0 * s + 6.0 * s * s);
  };

  GridForm u(grid, 1);
  const std::int64_t npts = grid.points();
  par::parallel_for(0, npts, [&](std::int64_t flat) {
    const auto idx = grid.unflatten(flat);
    double x[6], r2 = 0.0;
    for (int a = 0; a < grid.n; ++a) {
      x[a] = grid.coord(idx[a]);
      r2 += x[a] * x[a];
    }
    const double r = std::sqrt(r2);
    const double coeff = -v.interpolate(r) * window(r);
    for (int a = 0; a < grid.n; ++a) u.comps[a][flat] = coeff * x[a];
  });
  return u;
}

}  // namespace derham::radial

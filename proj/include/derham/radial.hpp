#pragma once

#include <utility>
#include <vector>

#include "derham/form.hpp"

namespace derham::radial {

/// Radial profile v(r) on the cell-centered mesh r_i = (i + 1/2) dr,
/// i = 0..nr-1, covering (0, R] with R = nr * dr. The symmetric ghost across
/// r = 0 encodes the regularity condition v'(0) = 0.
struct RadialProfile {
  int n = 3;
  double dr = 0.0;
  std::vector<double> v;
  double t = 0.0;

  int nr() const { return static_cast<int>(v.size()); }
  double R() const { return dr * nr(); }
  double r(int i) const { return dr * (i + 0.5); }
  double max_abs() const;
  void validate() const;
  /// Cubic interpolation of v at radius r, even extension across 0.
  double interpolate(double radius) const;
};

RadialProfile sample_profile(int n, int nr, double R,
                             const std::function<double(double)>& v_of_r);

/// v_t = v_rr + ((n+1)/r) v_r + (n+2) v^2 + 3 r v v_r, Dirichlet at R,
/// symmetric across the origin.
RadialProfile radial_rhs(const RadialProfile& v);

struct EvolveResult {
  enum class Status { kCompleted, kBlowUp };
  Status status = Status::kCompleted;
  double blowup_time = -1.0;
  RadialProfile final;  // last finite profile
  std::vector<std::pair<double, double>> max_series;  // (t, max |v|)
  std::vector<RadialProfile> snapshots;
};

/// RK4 march with fixed dt; requires dt <= 0.4 dr^2 (StabilityViolation).
/// Blow-up (max |v| > 1e8) is a status, not an error.
EvolveResult radial_evolve(const RadialProfile& v0, double t_final, double dt,
                           int snapshot_stride = 0);

struct SelfSimilarProfile {
  int n = 5;
  double gamma = 0.0;
  double kappa = 0.0;
  std::vector<double> y;
  std::vector<double> w;
  double decay_constant = 0.0;  // c in w ~ c y^{-2}
  bool matched = false;
};

struct OdeOptions {
  double y_start = 1e-4;
  double y_max = 40.0;
  bool coeff_2kw = true;  // the 2*kappa*w zero-order coefficient; false uses kappa*w
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  double overflow = 1e6;
};

enum class IntegrateOutcome { kReached, kOverflow, kNegative };

/// Integrates w'' + ((n+1)/y) w' - kappa y w' + (n+2) w^2 + 3 y w w'
/// - [2] kappa w = 0 from the series start w = gamma + a y^2,
/// a = ([2] kappa gamma - (n+2) gamma^2) / (2(n+2)), with adaptive RK45.
SelfSimilarProfile selfsim_integrate(double gamma, double kappa, int n, const OdeOptions& opt,
                                     IntegrateOutcome* outcome = nullptr);

/// Bisection on kappa in [1e-3, 1e3] separating the overflow branch from the
/// sign-flip branch of y^3 w' + 2 y^2 w at y_max. Throws NoBracket when the
/// scan finds no sign change.
SelfSimilarProfile selfsim_shoot(double gamma, int n, double y_max, bool coeff_2kw = true,
                                 double kappa_rel_tol = 1e-12);

/// u_i(x) = -v(|x|) x_i sampled on the grid, damped to zero by a radial
/// quintic window on [0.8 L, 0.95 L]. Requires R >= sqrt(n) L (MeshTooShort).
GridForm lift_radial(const RadialProfile& v, const Grid& grid);

}  // namespace derham::radial

#include "derham/trajectory.hpp"

#include <algorithm>

#include "derham/errors.hpp"

namespace derham {

HeatParams::HeatParams(double mu_, double T_, int nt_) : mu(mu_), T(T_), nt(nt_) {
  if (!(mu > 0.0)) throw Error(ErrorCode::InvalidProblem, "viscosity must be positive");
  if (!(T > 0.0)) throw Error(ErrorCode::InvalidProblem, "horizon must be positive");
  if (nt < 2) throw Error(ErrorCode::InvalidProblem, "need at least two time slices");
}

Trajectory::Trajectory(const HeatParams& p, const Grid& g, int q) : params(p) {
  slices.assign(p.nt, GridForm(g, q));
}

double Trajectory::sup_norm() const {
  double m = 0.0;
  for (const auto& s : slices) m = std::max(m, s.sup_norm());
  return m;
}

Trajectory& Trajectory::axpy(double a, const Trajectory& x) {
  require_compatible(*this, x);
  for (int i = 0; i < nt(); ++i) slices[i].axpy(a, x.slices[i]);
  return *this;
}

Trajectory& Trajectory::blend(double a, double b, const Trajectory& x) {
  require_compatible(*this, x);
  for (int i = 0; i < nt(); ++i) slices[i].blend(a, b, x.slices[i]);
  return *this;
}

void require_compatible(const Trajectory& a, const Trajectory& b) {
  if (a.nt() != b.nt()) throw Error(ErrorCode::ShapeMismatch, "trajectory slice counts differ");
  if (!(a.grid() == b.grid())) throw Error(ErrorCode::GridMismatch, "trajectory grids differ");
  if (a.degree() != b.degree())
    throw Error(ErrorCode::ShapeMismatch, "trajectory degrees differ");
}

Trajectory time_derivative(const Trajectory& u) {
  const int nt = u.nt();
  if (nt < 3) throw Error(ErrorCode::TooFewTimeSlices, "time derivative needs >= 3 slices");
  const double tau = u.params.tau();
  Trajectory out(u.params, u.grid(), u.degree());
  for (int i = 0; i < nt; ++i) {
    GridForm& d = out.slices[i];
    if (i == 0) {
      d.axpy(-1.5 / tau, u.slices[0]);
      d.axpy(2.0 / tau, u.slices[1]);
      d.axpy(-0.5 / tau, u.slices[2]);
    } else if (i == nt - 1) {
      d.axpy(1.5 / tau, u.slices[nt - 1]);
      d.axpy(-2.0 / tau, u.slices[nt - 2]);
      d.axpy(0.5 / tau, u.slices[nt - 3]);
    } else {
      d.axpy(0.5 / tau, u.slices[i + 1]);
      d.axpy(-0.5 / tau, u.slices[i - 1]);
    }
  }
  return out;
}

}  // namespace derham

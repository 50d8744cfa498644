#pragma once

#include <vector>

#include "derham/form.hpp"

namespace derham {

/// Viscosity and uniform time grid on [0, T].
struct HeatParams {
  double mu = 1.0;
  double T = 1.0;
  int nt = 2;

  HeatParams() = default;
  HeatParams(double mu_, double T_, int nt_);
  double tau() const { return T / (nt - 1); }
};

/// Time-indexed sequence of forms on a shared grid, the object the mild
/// fixed-point operator acts on.
struct Trajectory {
  HeatParams params;
  std::vector<GridForm> slices;

  Trajectory() = default;
  Trajectory(const HeatParams& p, const Grid& g, int q);

  int nt() const { return static_cast<int>(slices.size()); }
  double time(int i) const { return params.tau() * i; }
  const Grid& grid() const { return slices.front().grid; }
  int degree() const { return slices.front().degree(); }

  double sup_norm() const;
  Trajectory& axpy(double a, const Trajectory& x);
  Trajectory& blend(double a, double b, const Trajectory& x);
};

void require_compatible(const Trajectory& a, const Trajectory& b);

/// Slice-wise time derivative: centered second-order differences in the
/// interior, one-sided three-point stencils at the endpoints.
Trajectory time_derivative(const Trajectory& u);

}  // namespace derham

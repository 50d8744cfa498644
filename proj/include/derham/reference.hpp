#pragma once

#include "derham/form.hpp"

namespace derham::reference {

/// Free-space Burgers g_t + g g_x = mu g_xx with Gaussian bump data
/// g(x,0) = coupling * amplitude * exp(-x^2/sigma^2), evaluated through the
/// Cole-Hopf representation by adaptive-width Simpson quadrature. Returns the
/// unscaled profile f = g / coupling (the quasi-1-D reduction of the built-in
/// q = 1 nonlinearities carries coupling 3/2).
struct BumpProblem {
  double amplitude = 0.5;
  double sigma = 1.0;
  double mu = 0.1;
  double coupling = 1.5;
};
double cole_hopf_profile(const BumpProblem& prob, double x, double t);

/// Classical two-dimensional vortex decay on the 2 pi-periodic box:
/// u = (sin x1 cos x2, -cos x1 sin x2) e^{-2 mu t} and the matching
/// zero-mean pressure -(cos 2x1 + cos 2x2) e^{-4 mu t} / 4.
GridForm taylor_green_velocity(const Grid& g, double mu, double t);
GridForm taylor_green_pressure(const Grid& g, double mu, double t);

}  // namespace derham::reference

#pragma once

#include <span>

#include "derham/form.hpp"
#include "derham/trajectory.hpp"

namespace derham::potentials {

/// Heat fundamental solution (4 pi mu t)^{-n/2} exp(-|x|^2 / 4 mu t),
/// zero for t <= 0.
double heat_kernel_eval(std::span<const double> x, double t, double mu);

/// Fundamental solution of the Laplacian: ln|x|/pi for n = 2,
/// |x|^{2-n} / (sigma_n (2-n)) for n >= 3. Throws SingularPoint at x = 0.
double newton_kernel_eval(std::span<const double> x, int n);

/// e^{mu t laplacian} as the exp(-mu t |k|^2) multiplier.
GridForm heat_semigroup(const GridForm& u, double mu_t);
void heat_semigroup_inplace(SpectralForm& u, double mu_t);

/// Slices of the heat flow of u0; slice 0 is u0 exactly.
Trajectory poisson_potential(const GridForm& u0, const HeatParams& p);

/// Duhamel integral int_0^t e^{mu (t-s) laplacian} f(s) ds by trapezoidal
/// quadrature on the slice grid (the semigroup factors are exact, so the
/// recursion below equals the composite trapezoid sum).
Trajectory volume_potential(const Trajectory& f);

/// L^2-orthogonal projection onto co-closed forms, per Fourier mode
/// u - d d* u / |k|^2; the zero mode passes through unchanged.
GridForm leray_project(const GridForm& u);
void leray_project_spectral(SpectralForm& u);
Trajectory leray_project(const Trajectory& u);

/// The unique co-closed potential u with d u = g for g in the range of d,
/// spectrally d* g / |k|^2. Throws NotClosed when ||dg|| > closed_tol ||g||;
/// sets *zero_mode_lost when the mean of g exceeds 1e-10 (that part cannot
/// be represented and is dropped).
GridForm phi_inverse_d(const GridForm& g, double closed_tol = 1e-8,
                       bool* zero_mode_lost = nullptr);

}  // namespace derham::potentials

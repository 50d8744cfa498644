#pragma once

#include "derham/fft.hpp"
#include "derham/form.hpp"

namespace derham::exterior {

/// Pointwise exterior product with the alternating sign rule.
/// Throws DegreeOverflow when deg(a)+deg(b) > n, GridMismatch on different grids.
GridForm wedge(const GridForm& a, const GridForm& b);

/// Euclidean Hodge star, star(dx_I) = sign(I, I^c) dx_{I^c}.
GridForm hodge_star(const GridForm& u);

/// Exterior derivative via spectral differentiation; the zero operator off
/// the ends of the complex (q < 0 or q >= n yields the zero form).
GridForm d(const GridForm& u);
SpectralForm d(const SpectralForm& u);

/// Formal L^2 adjoint of d; sign convention makes
/// d_star(d(u)) + d(d_star(u)) = -laplacian(u) hold exactly per mode.
GridForm d_star(const GridForm& u);
SpectralForm d_star(const SpectralForm& u);

/// Componentwise spectral -|k|^2 multiplier.
GridForm laplacian(const GridForm& u);

/// Componentwise spectral partial derivative d^alpha, alpha per axis.
GridForm partial_derivative(const GridForm& u, std::span<const int> alpha);

// Shared per-grid symbol arrays: per-axis wavenumbers, |k|^2 and its
// pseudo-inverse (zero where |k|^2 = 0), laid out like the flat mode index.
struct SymbolTables {
  std::vector<std::vector<double>> axis_k;
  std::vector<double> k2;
  std::vector<double> neg_k2;
  std::vector<double> inv_k2;
};
const SymbolTables& symbols(const Grid& g);

/// DecayViolation when a free-space-mode field carries more than `tol`
/// relative magnitude on the boundary shell. No-op in periodic mode.
void require_decay(const GridForm& u, double tol = 1e-6);

}  // namespace derham::exterior

#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "derham/grid.hpp"
#include "derham/multiindex.hpp"

namespace derham {

/// A differential q-form sampled on the grid: one scalar field of N^n real
/// samples per increasing multi-index, x1 varying fastest.
struct GridForm {
  Grid grid;
  MultiIndexTable table;
  std::vector<std::vector<double>> comps;

  GridForm(const Grid& g, int q);

  int degree() const { return table.q(); }
  int components() const { return table.count(); }

  double& at(int comp, std::int64_t flat) { return comps[comp][flat]; }
  double at(int comp, std::int64_t flat) const { return comps[comp][flat]; }

  void fill(double value);
  bool all_finite() const;
  double sup_norm() const;                       // max over components and points
  double l2_norm() const;                        // sqrt(h^n * sum of squares)
  double dot(const GridForm& other) const;       // h^n weighted, all components

  GridForm& axpy(double a, const GridForm& x);   // *this += a*x
  GridForm& scale(double a);
  GridForm& blend(double a, double b, const GridForm& x);  // *this = a*(*this) + b*x

  /// Samples u_comp(x) = fn(comp, x); x passed as a pointer to n coordinates.
  static GridForm sample(const Grid& g, int q,
                         const std::function<double(int, const double*)>& fn);

  /// Relative magnitude on the boundary shell max_i |x_i| >= L/2, against the
  /// global sup; the cheap wraparound-pollution proxy for free-space fields.
  double boundary_fraction() const;
};

GridForm operator+(const GridForm& a, const GridForm& b);
GridForm operator-(const GridForm& a, const GridForm& b);
GridForm operator*(double a, const GridForm& u);

void require_same_grid(const GridForm& a, const GridForm& b);

/// Fourier side of a GridForm: complex coefficients per component,
/// normalized so that coefficient 0 is the mean.
struct SpectralForm {
  Grid grid;
  MultiIndexTable table;
  std::vector<std::vector<std::complex<double>>> comps;

  SpectralForm(const Grid& g, int q);

  int degree() const { return table.q(); }
  int components() const { return table.count(); }
};

}  // namespace derham

#include "derham/form.hpp"

#include <cmath>

#include "derham/errors.hpp"
#include "derham/kernels.hpp"
#include "derham/parallel.hpp"

namespace derham {

GridForm::GridForm(const Grid& g, int q) : grid(g), table(g.n, q) {
  comps.assign(table.count(), std::vector<double>(grid.points(), 0.0));
}

void GridForm::fill(double value) {
  for (auto& c : comps) std::fill(c.begin(), c.end(), value);
}

bool GridForm::all_finite() const {
  for (const auto& c : comps)
    for (double v : c)
      if (!std::isfinite(v)) return false;
  return true;
}

double GridForm::sup_norm() const {
  const auto& k = kernels::active();
  double m = 0.0;
  for (const auto& c : comps) m = std::max(m, k.abs_max(c.size(), c.data()));
  return m;
}

double GridForm::l2_norm() const { return std::sqrt(std::max(0.0, dot(*this))); }

double GridForm::dot(const GridForm& other) const {
  require_same_grid(*this, other);
  if (degree() != other.degree())
    throw Error(ErrorCode::ShapeMismatch, "dot of forms of different degree");
  const auto& k = kernels::active();
  double s = 0.0;
  for (int c = 0; c < components(); ++c)
    s += k.dot(comps[c].size(), comps[c].data(), other.comps[c].data());
  return s * grid.cell_measure();
}

GridForm& GridForm::axpy(double a, const GridForm& x) {
  require_same_grid(*this, x);
  const auto& k = kernels::active();
  for (int c = 0; c < components(); ++c)
    k.axpby(comps[c].size(), 1.0, comps[c].data(), a, x.comps[c].data(), comps[c].data());
  return *this;
}

GridForm& GridForm::scale(double a) {
  const auto& k = kernels::active();
  for (auto& c : comps) k.axpby(c.size(), a, c.data(), 0.0, c.data(), c.data());
  return *this;
}

GridForm& GridForm::blend(double a, double b, const GridForm& x) {
  require_same_grid(*this, x);
  const auto& k = kernels::active();
  for (int c = 0; c < components(); ++c)
    k.axpby(comps[c].size(), a, comps[c].data(), b, x.comps[c].data(), comps[c].data());
  return *this;
}

GridForm GridForm::sample(const Grid& g, int q,
                          const std::function<double(int, const double*)>& fn) {
  GridForm u(g, q);
  const std::int64_t npts = g.points();
  for (int c = 0; c < u.components(); ++c) {
    par::parallel_for(0, npts, [&](std::int64_t flat) {
      const auto j = g.unflatten(flat);
      double x[6];
      for (int i = 0; i < g.n; ++i) x[i] = g.coord(j[i]);
      u.comps[c][flat] = fn(c, x);
    });
  }
  return u;
}

double GridForm::boundary_fraction() const {
  const double sup = sup_norm();
  if (sup == 0.0) return 0.0;
  double shell = 0.0;
  const std::int64_t npts = grid.points();
  shell = par::reduce_max(0, npts, [&](std::int64_t flat) {
    const auto j = grid.unflatten(flat);
    double m = 0.0;
    for (int i = 0; i < grid.n; ++i) m = std::max(m, std::fabs(grid.coord(j[i])));
    if (m < grid.L / 2) return 0.0;
    double v = 0.0;
    for (const auto& c : comps) v = std::max(v, std::fabs(c[flat]));
    return v;
  });
  return shell / sup;
}

GridForm operator+(const GridForm& a, const GridForm& b) {
  GridForm r = a;
  r.axpy(1.0, b);
  return r;
}

GridForm operator-(const GridForm& a, const GridForm& b) {
  GridForm r = a;
  r.axpy(-1.0, b);
  return r;
}

GridForm operator*(double a, const GridForm& u) {
  GridForm r = u;
  r.scale(a);
  return r;
}

void require_same_grid(const GridForm& a, const GridForm& b) {
  if (!(a.grid == b.grid)) throw Error(ErrorCode::GridMismatch, "forms live on different grids");
}

SpectralForm::SpectralForm(const Grid& g, int q) : grid(g), table(g.n, q) {
  comps.assign(table.count(), std::vector<std::complex<double>>(grid.points(), 0.0));
}

}  // namespace derham

#include "derham/exterior.hpp"

#include <map>
#include <mutex>

#include "derham/errors.hpp"
#include "derham/kernels.hpp"
#include "derham/parallel.hpp"

namespace derham::exterior {

const SymbolTables& symbols(const Grid& g) {
  static std::map<std::tuple<int, int, double>, SymbolTables> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  const auto key = std::make_tuple(g.n, g.N, g.L);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  SymbolTables t;
  const std::int64_t npts = g.points();
  const auto& kax = g.wavenumbers();
  t.axis_k.assign(g.n, std::vector<double>(npts));
  t.k2.assign(npts, 0.0);
  for (std::int64_t flat = 0; flat < npts; ++flat) {
    std::int64_t rest = flat;
    double k2 = 0.0;
    for (int a = 0; a < g.n; ++a) {
      const double k = kax[rest % g.N];
      rest /= g.N;
      t.axis_k[a][flat] = k;
      k2 += k * k;
    }
    t.k2[flat] = k2;
  }
  t.neg_k2.resize(npts);
  t.inv_k2.resize(npts);
  for (std::int64_t i = 0; i < npts; ++i) {
    t.neg_k2[i] = -t.k2[i];
    t.inv_k2[i] = (t.k2[i] > 0.0) ? 1.0 / t.k2[i] : 0.0;
  }
  return cache.emplace(key, std::move(t)).first->second;
}

GridForm wedge(const GridForm& a, const GridForm& b) {
  require_same_grid(a, b);
  const int n = a.grid.n;
  const int p = a.degree(), q = b.degree();
  if (p + q > n) throw Error(ErrorCode::DegreeOverflow, "wedge degree exceeds dimension");
  GridForm out(a.grid, p + q);
  const auto& k = kernels::active();
  for (int i = 0; i < a.components(); ++i)
    for (int j = 0; j < b.components(); ++j) {
      const auto m = a.table.merge(i, b.table, j, out.table);
      if (m.sign == 0) continue;
      k.fmadd_mul(out.comps[m.dst].size(), static_cast<double>(m.sign), a.comps[i].data(),
                  b.comps[j].data(), out.comps[m.dst].data());
    }
  return out;
}

GridForm hodge_star(const GridForm& u) {
  const int n = u.grid.n;
  GridForm out(u.grid, n - u.degree());
  const auto& k = kernels::active();
  for (int i = 0; i < u.components(); ++i) {
    const auto c = u.table.complement(i, out.table);
    k.axpby(u.comps[i].size(), static_cast<double>(c.sign), u.comps[i].data(), 0.0,
            u.comps[i].data(), out.comps[c.dst].data());
  }
  return out;
}

SpectralForm d(const SpectralForm& u) {
  const Grid& g = u.grid;
  SpectralForm out(g, std::min(u.degree() + 1, g.n + 1));
  if (u.degree() < 0 || u.degree() >= g.n) return out;
  const auto& sym = symbols(g);
  const auto terms = exterior_deriv_terms(g.n, u.degree());
  const auto& k = kernels::active();
  for (const auto& t : terms)
    k.cfmadd_ik(u.comps[t.src].size(), t.sign, sym.axis_k[t.axis].data(), u.comps[t.src].data(),
                out.comps[t.dst].data());
  return out;
}

SpectralForm d_star(const SpectralForm& u) {
  const Grid& g = u.grid;
  SpectralForm out(g, std::max(u.degree() - 1, -1));
  if (u.degree() <= 0 || u.degree() > g.n) return out;
  const auto& sym = symbols(g);
  const auto terms = codifferential_terms(g.n, u.degree());
  const auto& k = kernels::active();
  for (const auto& t : terms)
    k.cfmadd_ik(u.comps[t.src].size(), t.sign, sym.axis_k[t.axis].data(), u.comps[t.src].data(),
                out.comps[t.dst].data());
  return out;
}

GridForm d(const GridForm& u) {
  if (u.degree() < 0 || u.degree() >= u.grid.n) return GridForm(u.grid, std::min(u.degree() + 1, u.grid.n + 1));
  return fft::inverse(d(fft::forward(u)));
}

GridForm d_star(const GridForm& u) {
  if (u.degree() <= 0 || u.degree() > u.grid.n) return GridForm(u.grid, std::max(u.degree() - 1, -1));
  return fft::inverse(d_star(fft::forward(u)));
}

GridForm laplacian(const GridForm& u) {
  SpectralForm s = fft::forward(u);
  const auto& sym = symbols(u.grid);
  const auto& k = kernels::active();
  for (auto& c : s.comps) k.cmul_real(c.size(), sym.neg_k2.data(), c.data());
  return fft::inverse(s);
}

GridForm partial_derivative(const GridForm& u, std::span<const int> alpha) {
  SpectralForm s = fft::forward(u);
  const auto& sym = symbols(u.grid);
  const auto& k = kernels::active();
  for (int a = 0; a < u.grid.n; ++a)
    for (int rep = 0; rep < alpha[a]; ++rep)
      for (auto& c : s.comps) k.cmul_ik(c.size(), sym.axis_k[a].data(), c.data());
  return fft::inverse(s);
}

void require_decay(const GridForm& u, double tol) {
  if (u.grid.mode == DomainMode::kPeriodic) return;
  const double frac = u.boundary_fraction();
  if (frac > tol)
    throw Error(ErrorCode::DecayViolation,
                "boundary shell magnitude " + std::to_string(frac) + " exceeds " +
                    std::to_string(tol) + " of the sup norm");
}

}  // namespace derham::exterior

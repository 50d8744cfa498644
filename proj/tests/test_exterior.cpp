#include <doctest.h>

#include <cmath>
#include <numbers>

#include "derham/errors.hpp"
#include "derham/exterior.hpp"
#include "derham/fft.hpp"
#include "derham/synth.hpp"

using namespace derham;
using namespace derham::exterior;

namespace {

// independent spectral grad/div/curl for the n=3 cross-checks; plain
// finite formulas, not routed through the multi-index tables
GridForm direct_grad(const GridForm& f) {
  const Grid& g = f.grid;
  SpectralForm s = fft::forward(f);
  GridForm out(g, 1);
  const auto& sym = symbols(g);
  for (int a = 0; a < g.n; ++a) {
    std::vector<std::complex<double>> comp(g.points());
    for (std::int64_t m = 0; m < g.points(); ++m)
      comp[m] = std::complex<double>(0.0, sym.axis_k[a][m]) * s.comps[0][m];
    fft::inverse(g, comp.data(), out.comps[a].data());
  }
  return out;
}

GridForm direct_div(const GridForm& u) {
  const Grid& g = u.grid;
  SpectralForm s = fft::forward(u);
  GridForm out(g, 0);
  const auto& sym = symbols(g);
  std::vector<std::complex<double>> acc(g.points(), 0.0);
  for (int a = 0; a < g.n; ++a)
    for (std::int64_t m = 0; m < g.points(); ++m)
      acc[m] += std::complex<double>(0.0, sym.axis_k[a][m]) * s.comps[a][m];
  fft::inverse(g, acc.data(), out.comps[0].data());
  return out;
}

GridForm direct_curl(const GridForm& u) {
  const Grid& g = u.grid;
  REQUIRE(g.n == 3);
  SpectralForm s = fft::forward(u);
  GridForm out(g, 1);
  const auto& sym = symbols(g);
  const int eps[3][2] = {{1, 2}, {2, 0}, {0, 1}};
  for (int c = 0; c < 3; ++c) {
    const int a = eps[c][0], b = eps[c][1];
    std::vector<std::complex<double>> comp(g.points());
    for (std::int64_t m = 0; m < g.points(); ++m)
      comp[m] = std::complex<double>(0.0, 1.0) *
                (sym.axis_k[a][m] * s.comps[b][m] - sym.axis_k[b][m] * s.comps[a][m]);
    fft::inverse(g, comp.data(), out.comps[c].data());
  }
  return out;
}

GridForm constant_basis_form(const Grid& g, int q, int comp) {
  GridForm u(g, q);
  std::fill(u.comps[comp].begin(), u.comps[comp].end(), 1.0);
  return u;
}

}  // namespace

TEST_CASE("multi-index table invariants") {
  for (int n = 2; n <= 6; ++n)
    for (int q = 0; q <= n; ++q) {
      MultiIndexTable t(n, q);
      CHECK(t.count() == binomial(n, q));
      for (int r = 0; r < t.count(); ++r) {
        const auto tup = t.tuple(r);
        for (std::size_t i = 1; i < tup.size(); ++i) CHECK(tup[i - 1] < tup[i]);
        CHECK(t.rank(tup) == r);  // rank(lookup(t)) round-trip
        if (r > 0) {
          const auto prev = t.tuple(r - 1);
          CHECK(std::lexicographical_compare(prev.begin(), prev.end(), tup.begin(), tup.end()));
        }
      }
    }
}

TEST_CASE("wedge basis examples") {
  const Grid g(3, 8, 1.0);
  const GridForm dx1 = constant_basis_form(g, 1, 0);
  const GridForm dx2 = constant_basis_form(g, 1, 1);

  GridForm w12 = wedge(dx1, dx2);
  CHECK(w12.comps[0][0] == 1.0);  // dx1^dx2 coefficient +1
  CHECK(w12.comps[1][0] == 0.0);
  CHECK(w12.comps[2][0] == 0.0);

  GridForm w21 = wedge(dx2, dx1);
  CHECK(w21.comps[0][0] == -1.0);  // antisymmetry

  GridForm f = synth::band_limited(g, 0, 2, 11);
  GridForm gf = synth::band_limited(g, 0, 2, 12);
  GridForm fdx1(g, 1), gdx1(g, 1);
  fdx1.comps[0] = f.comps[0];
  gdx1.comps[0] = gf.comps[0];
  CHECK(wedge(fdx1, gdx1).sup_norm() == 0.0);  // repeated index

  CHECK_THROWS_AS(wedge(wedge(dx1, dx2), wedge(dx1, dx2)), Error);  // degree 4 > n
}

TEST_CASE("wedge is bilinear and graded anticommutative") {
  const Grid g(3, 16, 2.0, DomainMode::kPeriodic);
  for (int p = 0; p <= 2; ++p)
    for (int q = 0; p + q <= 3 && q <= 2; ++q) {
      const GridForm a = synth::band_limited(g, p, 4, 100 + p);
      const GridForm b = synth::band_limited(g, q, 4, 200 + q);
      GridForm ab = wedge(a, b);
      GridForm ba = wedge(b, a);
      const double sign = (p * q) % 2 == 0 ? 1.0 : -1.0;
      ba.scale(sign);
      CHECK((ab - ba).sup_norm() <= 1e-14 * std::max(1.0, ab.sup_norm()));

      // bilinearity in the first slot
      const GridForm a2 = synth::band_limited(g, p, 4, 300 + p);
      GridForm lin = wedge(a + a2, b);
      lin.axpy(-1.0, wedge(a, b));
      lin.axpy(-1.0, wedge(a2, b));
      CHECK(lin.sup_norm() <= 1e-13);
    }
}

TEST_CASE("hodge star basis examples and the double-star law") {
  const Grid g3(3, 8, 1.0);
  GridForm star_dx1 = hodge_star(constant_basis_form(g3, 1, 0));
  CHECK(star_dx1.comps[2][0] == 1.0);  // dx2^dx3 slot, sign +1
  CHECK(star_dx1.comps[0][0] == 0.0);
  CHECK(star_dx1.comps[1][0] == 0.0);

  const Grid g2(2, 8, 1.0);
  const GridForm u2 = synth::band_limited(g2, 1, 2, 5);
  GridForm ss2 = hodge_star(hodge_star(u2));
  ss2.axpy(1.0, u2);  // (-1)^{q(n-q)} = -1 here
  CHECK(ss2.sup_norm() == 0.0);

  const GridForm u3 = synth::band_limited(g3, 1, 2, 6);
  GridForm ss3 = hodge_star(hodge_star(u3));
  ss3.axpy(-1.0, u3);
  CHECK(ss3.sup_norm() == 0.0);
}

TEST_CASE("exterior derivative analytic examples") {
  const Grid g(2, 32, 3.0);
  const double kappa = std::numbers::pi / g.L;
  GridForm u = GridForm::sample(g, 0, [&](int, const double* x) { return std::sin(kappa * x[0]); });
  GridForm du = d(u);
  GridForm expect = GridForm::sample(g, 1, [&](int c, const double* x) {
    return c == 0 ? kappa * std::cos(kappa * x[0]) : 0.0;
  });
  CHECK((du - expect).sup_norm() <= 1e-12 * kappa);

  GridForm c0(g, 0);
  c0.fill(3.5);
  CHECK(d(c0).sup_norm() == 0.0);
}

TEST_CASE("complex identities across dimensions") {
  for (int n = 2; n <= 4; ++n) {
    const Grid g(n, n == 4 ? 12 : 24, 5.0, DomainMode::kPeriodic);
    for (int q = 0; q <= n; ++q) {
      const GridForm u = synth::band_limited(g, q, 3, 40 + q + 10 * n);
      const double scale = u.sup_norm();

      if (q <= n - 2) CHECK(d(d(u)).sup_norm() <= 1e-12 * scale);
      if (q >= 2) CHECK(d_star(d_star(u)).sup_norm() <= 1e-12 * scale);

      GridForm weitz = d_star(d(u)) + d(d_star(u)) + laplacian(u);
      CHECK(weitz.sup_norm() <= 1e-10 * scale);
    }
  }
}

TEST_CASE("laplacian eigenfunction and composite") {
  const Grid g(2, 32, 4.0);
  const double kappa = std::numbers::pi / g.L;
  GridForm u = GridForm::sample(g, 0, [&](int, const double* x) { return std::sin(kappa * x[0]); });
  GridForm lap = laplacian(u);
  GridForm expect = u;
  expect.scale(-kappa * kappa);
  CHECK((lap - expect).sup_norm() <= 1e-12 * kappa * kappa);

  GridForm c(g, 0);
  c.fill(2.0);
  CHECK(laplacian(c).sup_norm() <= 1e-14);
}

TEST_CASE("n=3 vector calculus dictionary") {
  const Grid g(3, 24, 4.0, DomainMode::kPeriodic);
  const GridForm f = synth::band_limited(g, 0, 4, 71);
  const GridForm u = synth::band_limited(g, 1, 4, 72);

  // d0 <-> grad
  CHECK((d(f) - direct_grad(f)).sup_norm() <= 1e-12);
  // -d0* <-> div
  GridForm div_u = d_star(u);
  div_u.scale(-1.0);
  CHECK((div_u - direct_div(u)).sup_norm() <= 1e-12);
  // star d1 <-> curl
  CHECK((hodge_star(d(u)) - direct_curl(u)).sup_norm() <= 1e-12);
}

TEST_CASE("spectral round-trip and conjugate symmetry") {
  const Grid g(3, 16, 2.0, DomainMode::kPeriodic);
  const GridForm u = synth::band_limited(g, 1, 5, 99);
  SpectralForm s = fft::forward(u);
  GridForm back = fft::inverse(s);
  CHECK((back - u).sup_norm() <= 1e-12 * u.sup_norm());

  // conjugate symmetry of a real field: coef(-k) = conj(coef(k))
  const int N = g.N;
  auto flat = [&](int i, int j, int k) { return (std::int64_t(k) * N + j) * N + i; };
  auto neg = [&](int m) { return (N - m) % N; };
  double worst = 0.0;
  for (int k = 0; k < N; ++k)
    for (int j = 0; j < N; ++j)
      for (int i = 0; i < N; ++i) {
        const auto z = s.comps[0][flat(i, j, k)];
        const auto zc = std::conj(s.comps[0][flat(neg(i), neg(j), neg(k))]);
        worst = std::max(worst, std::abs(z - zc));
      }
  CHECK(worst <= 1e-14);
}

TEST_CASE("grid mismatch is rejected") {
  const Grid a(2, 16, 1.0), b(2, 32, 1.0);
  GridForm ua(a, 1), ub(b, 1);
  CHECK_THROWS_AS(wedge(ua, ub), Error);
}

#include <doctest.h>

#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include "derham/errors.hpp"
#include "derham/exterior.hpp"
#include "derham/nonlinearity.hpp"
#include "derham/potentials.hpp"
#include "derham/radial.hpp"
#include "derham/synth.hpp"

using namespace derham;
using namespace derham::nonlinearity;

namespace {

// analytic vector field built from a few plane waves; can be evaluated (and
// finite-differenced) at arbitrary points, independent of the grid operators
struct TrigField {
  int n;
  struct Wave {
    int comp;
    double amp;
    std::array<double, 6> k;
    double phase;
  };
  std::vector<Wave> waves;

  static TrigField random(const Grid& g, int terms, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> mode(-2, 2);
    std::uniform_real_distribution<double> amp(-1.0, 1.0);
    TrigField f;
    f.n = g.n;
    for (int c = 0; c < g.n; ++c)
      for (int t = 0; t < terms; ++t) {
        Wave w;
        w.comp = c;
        w.amp = amp(rng);
        for (int a = 0; a < g.n; ++a) w.k[a] = std::numbers::pi / g.L * mode(rng);
        w.phase = amp(rng) * 3.0;
        f.waves.push_back(w);
      }
    return f;
  }

  double eval(int comp, const double* x) const {
    double s = 0.0;
    for (const auto& w : waves) {
      if (w.comp != comp) continue;
      double arg = w.phase;
      for (int a = 0; a < n; ++a) arg += w.k[a] * x[a];
      s += w.amp * std::sin(arg);
    }
    return s;
  }

  // central finite difference with a tiny off-grid step
  double fd(int comp, int axis, const double* x) const {
    const double h = 1e-5;
    double xp[6], xm[6];
    for (int a = 0; a < n; ++a) xp[a] = xm[a] = x[a];
    xp[axis] += h;
    xm[axis] -= h;
    return (eval(comp, xp) - eval(comp, xm)) / (2.0 * h);
  }

  GridForm sample(const Grid& g) const {
    return GridForm::sample(g, 1, [&](int c, const double* x) { return eval(c, x); });
  }
};

// termwise convective family from the analytic field:
// b (u.grad)u + ((1-b) grad|u|^2 + (div u) u) / 2
double ps_oracle(const TrigField& f, double b, int comp, const double* x) {
  const int n = f.n;
  double conv = 0.0;
  for (int a = 0; a < n; ++a) conv += f.eval(a, x) * f.fd(comp, a, x);
  double grad_sq = 0.0;  // d/dx_comp |u|^2
  for (int a = 0; a < n; ++a) grad_sq += 2.0 * f.eval(a, x) * f.fd(a, comp, x);
  double div = 0.0;
  for (int a = 0; a < n; ++a) div += f.fd(a, a, x);
  return b * conv + ((1.0 - b) * grad_sq + div * f.eval(comp, x)) / 2.0;
}

}  // namespace

TEST_CASE("built-in constructors") {
  CHECK_THROWS_AS(NonlinearitySpec::builtin("lamb", 2), Error);
  CHECK_THROWS_AS(NonlinearitySpec::builtin("burgers", 2), Error);
  CHECK_THROWS_AS(NonlinearitySpec::builtin("ps", 1), Error);
  const auto lamb = NonlinearitySpec::builtin("lamb", 3);
  lamb.validate();
  const auto ps5 = NonlinearitySpec::builtin("ps", 5, 0.5);
  ps5.validate();
  CHECK_FALSE(lamb.is_zero());
  CHECK(NonlinearitySpec::zero(3, 1).is_zero());
}

TEST_CASE("zero field maps to zero") {
  const Grid g(3, 16, 4.0, DomainMode::kPeriodic);
  const auto spec = NonlinearitySpec::builtin("lamb", 3);
  GridForm z(g, 1);
  CHECK(apply_N(spec, z).sup_norm() == 0.0);
  const GridForm w = synth::band_limited(g, 1, 3, 9);
  CHECK(apply_B(spec, w, z).sup_norm() == 0.0);
}

TEST_CASE("lamb form equals the convective derivative") {
  const Grid g(3, 32, 4.0, DomainMode::kPeriodic);
  const auto spec = NonlinearitySpec::builtin("lamb", 3);

  // three analytic test fields; oracle is the termwise analytic/FD evaluation
  for (std::uint64_t seed : {1, 2, 3}) {
    const TrigField f = TrigField::random(g, 2, seed);
    const GridForm u = f.sample(g);
    const GridForm nu = apply_N(spec, u);

    double worst = 0.0, scale = 0.0;
    std::mt19937_64 pick(seed);
    std::uniform_int_distribution<std::int64_t> pt(0, g.points() - 1);
    for (int trial = 0; trial < 200; ++trial) {
      const std::int64_t flat = pt(pick);
      const auto idx = g.unflatten(flat);
      double x[3];
      for (int a = 0; a < 3; ++a) x[a] = g.coord(idx[a]);
      for (int c = 0; c < 3; ++c) {
        double conv = 0.0;
        for (int a = 0; a < 3; ++a) conv += f.eval(a, x) * f.fd(c, a, x);
        worst = std::max(worst, std::fabs(nu.comps[c][flat] - conv));
        scale = std::max(scale, std::fabs(conv));
      }
    }
    CHECK(worst <= 1e-6 * std::max(1.0, scale));
  }
}

TEST_CASE("lamb form agrees with its wedge/star expression") {
  const Grid g(3, 24, 4.0, DomainMode::kPeriodic);
  const auto spec = NonlinearitySpec::builtin("lamb", 3);
  const GridForm u = synth::band_limited(g, 1, 4, 17);

  // star(star d u ^ u) + d |u|^2 / 2 assembled from the exterior operators
  GridForm vort = exterior::hodge_star(exterior::d(u));
  GridForm term1 = exterior::hodge_star(exterior::wedge(vort, u));
  GridForm usq(g, 0);
  for (int c = 0; c < 3; ++c)
    for (std::int64_t i = 0; i < g.points(); ++i)
      usq.comps[0][i] += 0.5 * u.comps[c][i] * u.comps[c][i];
  GridForm composed = term1 + exterior::d(usq);

  CHECK((apply_N(spec, u) - composed).sup_norm() <= 1e-10 * composed.sup_norm());
}

TEST_CASE("ps family against the termwise finite-difference oracle") {
  for (int n : {2, 3}) {
    const Grid g(n, 32, 4.0, DomainMode::kPeriodic);
    for (double b : {0.0, 0.5, 1.0}) {
      const auto spec = NonlinearitySpec::builtin("ps", n, b);
      const TrigField f = TrigField::random(g, 2, 40 + n + static_cast<int>(10 * b));
      const GridForm u = f.sample(g);
      const GridForm nu = apply_N(spec, u);

      double worst = 0.0, scale = 0.0;
      std::mt19937_64 pick(7);
      std::uniform_int_distribution<std::int64_t> pt(0, g.points() - 1);
      for (int trial = 0; trial < 150; ++trial) {
        const std::int64_t flat = pt(pick);
        const auto idx = g.unflatten(flat);
        double x[6];
        for (int a = 0; a < n; ++a) x[a] = g.coord(idx[a]);
        for (int c = 0; c < n; ++c) {
          const double oracle = ps_oracle(f, b, c, x);
          worst = std::max(worst, std::fabs(nu.comps[c][flat] - oracle));
          scale = std::max(scale, std::fabs(oracle));
        }
      }
      CHECK(worst <= 1e-6 * std::max(1.0, scale));
    }
  }
}

TEST_CASE("radial field reduces to the profile formula") {
  // u = -v(r) x with smooth v: the built-in family evaluates to
  // x * ((3/2) r v v' + (n+2)/2 v^2) for every b
  const int n = 3;
  const Grid g(n, 48, 8.0);
  // gaussian profile: spectrally resolved at this N, negligible at the window
  const auto prof = radial::sample_profile(n, 4000, 16.0, [](double r) {
    return std::exp(-r * r / 2.0);
  });
  const GridForm u = radial::lift_radial(prof, g);

  for (double b : {0.0, 1.0}) {
    const auto spec = NonlinearitySpec::builtin("ps", n, b);
    const GridForm nu = apply_N(spec, u);

    double worst = 0.0;
    for (std::int64_t flat = 0; flat < g.points(); ++flat) {
      const auto idx = g.unflatten(flat);
      double x[3], r2 = 0.0;
      for (int a = 0; a < n; ++a) {
        x[a] = g.coord(idx[a]);
        r2 += x[a] * x[a];
      }
      const double r = std::sqrt(r2);
      if (r > 0.5 * g.L || r < 0.2) continue;  // inside the window, off the origin
      const double v = std::exp(-r2 / 2.0);
      const double vp = -r * std::exp(-r2 / 2.0);
      const double coeff = 1.5 * r * v * vp + 0.5 * (n + 2) * v * v;
      for (int c = 0; c < n; ++c)
        worst = std::max(worst, std::fabs(nu.comps[c][flat] - coeff * x[c]));
    }
    CHECK(worst <= 1e-5);
  }
}

TEST_CASE("bilinear form properties") {
  const Grid g(3, 24, 4.0, DomainMode::kPeriodic);
  const auto spec = NonlinearitySpec::builtin("ps", 3, 0.75);
  const GridForm u = synth::band_limited(g, 1, 4, 100);
  const GridForm w = synth::band_limited(g, 1, 4, 101);
  const GridForm h = synth::band_limited(g, 1, 4, 102);

  SUBCASE("symmetry") {
    CHECK((apply_B(spec, w, u) - apply_B(spec, u, w)).sup_norm() <= 1e-12);
  }

  SUBCASE("B(u,u) = 2 N(u) exactly") {
    GridForm r = apply_B(spec, u, u);
    r.axpy(-2.0, apply_N(spec, u));
    CHECK(r.sup_norm() == 0.0);
  }

  SUBCASE("linear in each slot") {
    GridForm lhs = apply_B(spec, w, u + h);
    lhs.axpy(-1.0, apply_B(spec, w, u));
    lhs.axpy(-1.0, apply_B(spec, w, h));
    CHECK(lhs.sup_norm() <= 1e-12);

    GridForm scaled = u;
    scaled.scale(-3.0);
    GridForm lhs2 = apply_B(spec, scaled, w);
    lhs2.axpy(3.0, apply_B(spec, u, w));
    CHECK(lhs2.sup_norm() <= 1e-11);
  }

  SUBCASE("shape mismatch is rejected") {
    GridForm two_form(g, 2);
    CHECK_THROWS_AS(apply_N(spec, two_form), Error);
  }
}

TEST_CASE("quadratic expansion at the criterion tolerances") {
  const Grid g(3, 24, 4.0, DomainMode::kPeriodic);
  std::vector<NonlinearitySpec> specs = {NonlinearitySpec::builtin("lamb", 3),
                                         NonlinearitySpec::builtin("ps", 3, 0.0),
                                         NonlinearitySpec::builtin("ps", 3, 0.5),
                                         NonlinearitySpec::builtin("ps", 3, 1.0)};
  for (const auto& spec : specs) {
    GridForm u = synth::band_limited(g, 1, 4, 200);
    u.scale(1e-3);  // keeps the O(eps^2) remainder above the rounding floor
    const GridForm h = synth::band_limited(g, 1, 4, 201);
    for (double eps : {1e-1, 1e-2, 1e-3}) {
      GridForm upe = u;
      upe.axpy(eps, h);
      GridForm remainder = apply_N(spec, upe) - apply_N(spec, u);
      remainder.axpy(-eps, apply_B(spec, u, h));
      GridForm expected = apply_B(spec, h, h);
      expected.scale(0.5 * eps * eps);
      CHECK((remainder - expected).sup_norm() <= 1e-10 * expected.sup_norm());
    }
  }
}

TEST_CASE("convective term is orthogonal to divergence-free fields") {
  const Grid g(3, 24, 4.0, DomainMode::kPeriodic);
  const auto spec = NonlinearitySpec::builtin("lamb", 3);
  const GridForm u = potentials::leray_project(synth::band_limited(g, 1, 4, 300));
  const GridForm nu = apply_N(spec, u);
  const double pairing = std::fabs(nu.dot(u));
  const double scale = u.sup_norm() * u.sup_norm() * u.sup_norm();
  CHECK(pairing <= 1e-8 * std::max(1.0, scale));
}

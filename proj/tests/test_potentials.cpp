#include <doctest.h>

#include <cmath>
#include <numbers>

#include "derham/errors.hpp"
#include "derham/exterior.hpp"
#include "derham/potentials.hpp"
#include "derham/synth.hpp"
#include "derham/trajectory.hpp"

using namespace derham;
using namespace derham::potentials;

namespace {

// discrete heat-operator residual ||du/dt - mu lap u - f||_sup over slices
double heat_residual(const Trajectory& u, const Trajectory& f) {
  const Trajectory dudt = time_derivative(u);
  double worst = 0.0;
  for (int i = 0; i < u.nt(); ++i) {
    GridForm r = dudt.slices[i] - u.params.mu * exterior::laplacian(u.slices[i]);
    r.axpy(-1.0, f.slices[i]);
    worst = std::max(worst, r.sup_norm());
  }
  return worst;
}

}  // namespace

TEST_CASE("heat kernel pointwise values") {
  const double x0[2] = {0.3, -0.4};
  CHECK(heat_kernel_eval({x0, 2}, 0.0, 1.0) == 0.0);
  CHECK(heat_kernel_eval({x0, 2}, -1.0, 1.0) == 0.0);

  const double origin[2] = {0.0, 0.0};
  const double t = 1.0 / (4.0 * std::numbers::pi);
  CHECK(heat_kernel_eval({origin, 2}, t, 1.0) == doctest::Approx(1.0).epsilon(1e-14));

  // unit mass: quadrature over the box for 4 mu t << L^2
  const Grid g(2, 128, 8.0);
  double mass = 0.0;
  for (std::int64_t i = 0; i < g.points(); ++i) {
    const auto idx = g.unflatten(i);
    const double x[2] = {g.coord(idx[0]), g.coord(idx[1])};
    mass += heat_kernel_eval({x, 2}, 0.25, 0.5) * g.cell_measure();
  }
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("newton kernel") {
  const double e1_2d[2] = {1.0, 0.0};
  CHECK(newton_kernel_eval({e1_2d, 2}, 2) == doctest::Approx(0.0));
  const double e1_3d[3] = {0.0, 1.0, 0.0};
  CHECK(newton_kernel_eval({e1_3d, 3}, 3) == doctest::Approx(-1.0 / (4.0 * std::numbers::pi)));
  const double zero[3] = {0.0, 0.0, 0.0};
  CHECK_THROWS_AS(newton_kernel_eval({zero, 3}, 3), Error);

  // harmonic away from the origin: radial laplacian e'' + (n-1)/r e' = 0
  for (int n : {2, 3, 4}) {
    const double h = 1e-4;
    for (double r : {0.5, 1.0, 2.0}) {
      auto eval = [&](double rr) {
        const double x[1] = {rr};
        return newton_kernel_eval({x, 1}, n);  // kernel depends on |x| only
      };
      const double lap = (eval(r + h) - 2.0 * eval(r) + eval(r - h)) / (h * h) +
                         (n - 1) / r * (eval(r + h) - eval(r - h)) / (2.0 * h);
      CHECK(std::fabs(lap) <= 1e-6 * std::fabs(eval(r)) / (r * r) + 1e-6);
    }
  }
}

TEST_CASE("poisson potential") {
  const Grid g(2, 64, 10.0);

  SUBCASE("gaussian widens with the closed form") {
    const double sigma2 = 1.6;
    GridForm u0 = GridForm::sample(g, 1, [&](int c, const double* x) {
      const double r2 = x[0] * x[0] + x[1] * x[1];
      return (c == 0 ? 1.0 : 0.5) * std::exp(-r2 / sigma2);
    });
    const HeatParams hp(0.25, 1.0, 5);
    const Trajectory traj = poisson_potential(u0, hp);
    CHECK((traj.slices[0] - u0).sup_norm() == 0.0);  // slice 0 exact

    for (int i = 1; i < traj.nt(); ++i) {
      const double widened = sigma2 + 4.0 * hp.mu * traj.time(i);
      GridForm exact = GridForm::sample(g, 1, [&](int c, const double* x) {
        const double r2 = x[0] * x[0] + x[1] * x[1];
        return (c == 0 ? 1.0 : 0.5) * (sigma2 / widened) * std::exp(-r2 / widened);
      });
      CHECK((traj.slices[i] - exact).sup_norm() <= 1e-8);
    }
  }

  SUBCASE("solves the heat equation in the discrete residual sense") {
    GridForm u0 = synth::gaussian_bump(g, 1, 1.0, 1.3);
    const HeatParams hp(0.3, 0.2, 201);
    const Trajectory traj = poisson_potential(u0, hp);
    Trajectory zero_f(hp, g, 1);
    // residual dominated by the time-differencing error O(tau^2)
    CHECK(heat_residual(traj, zero_f) <= 1e-6 * std::max(1.0, u0.sup_norm()));
  }

  SUBCASE("short-time limit returns the data") {
    GridForm u0 = synth::decaying_random(g, 1, 6, 302, 2.5);
    const HeatParams hp(1e-9, 1e-3, 3);
    const Trajectory traj = poisson_potential(u0, hp);
    CHECK((traj.slices.back() - u0).sup_norm() <= 1e-8);
  }

  SUBCASE("non-decaying data is rejected in free mode") {
    GridForm bad = synth::band_limited(g, 1, 4, 303);
    CHECK_THROWS_AS(poisson_potential(bad, HeatParams(1.0, 1.0, 3)), Error);
  }
}

TEST_CASE("volume potential") {
  const Grid g(2, 64, 10.0);

  SUBCASE("zero forcing gives the zero trajectory") {
    const HeatParams hp(0.5, 1.0, 9);
    Trajectory f(hp, g, 1);
    CHECK(volume_potential(f).sup_norm() == 0.0);
  }

  SUBCASE("time-constant eigenfield has the scalar closed form") {
    // f = sin(kappa x1) c: u(t) = (1 - e^{-mu kappa^2 t}) / (mu kappa^2) f
    const double kappa = std::numbers::pi / g.L;
    const HeatParams hp(0.7, 2.0, 65);
    GridForm fslice = GridForm::sample(g, 1, [&](int c, const double* x) {
      return (c == 0 ? 1.0 : -0.25) * std::sin(kappa * x[0]);
    });
    Trajectory f(hp, g, 1);
    for (auto& s : f.slices) s = fslice;
    const Trajectory u = volume_potential(f);
    const double mk2 = hp.mu * kappa * kappa;
    for (int i = 0; i < u.nt(); ++i) {
      GridForm exact = fslice;
      exact.scale((1.0 - std::exp(-mk2 * u.time(i))) / mk2);
      CHECK((u.slices[i] - exact).sup_norm() <= 1e-6);
    }
    CHECK(u.slices[0].sup_norm() == 0.0);
  }

  SUBCASE("duhamel residual halves at second order") {
    GridForm env = synth::decaying_random(g, 1, 5, 304, 2.5);
    auto make_forcing = [&](int nt) {
      const HeatParams hp(0.4, 0.5, nt);
      Trajectory f(hp, g, 1);
      for (int i = 0; i < nt; ++i) {
        f.slices[i] = env;
        f.slices[i].scale(std::cos(3.0 * f.time(i)) + 1.5);
      }
      return f;
    };
    const Trajectory f1 = make_forcing(17), f2 = make_forcing(33);
    const double r1 = heat_residual(volume_potential(f1), f1);
    const double r2 = heat_residual(volume_potential(f2), f2);
    CHECK(r1 / r2 >= 3.0);
    CHECK(r1 / r2 <= 5.0);
  }
}

TEST_CASE("semigroup property") {
  const Grid g(3, 24, 6.0, DomainMode::kPeriodic);
  const GridForm u = synth::band_limited(g, 1, 5, 400);
  GridForm ab = heat_semigroup(heat_semigroup(u, 0.123), 0.456);
  GridForm once = heat_semigroup(u, 0.579);
  CHECK((ab - once).sup_norm() <= 1e-12 * u.sup_norm());
}

TEST_CASE("leray projection") {
  const Grid g(3, 24, 6.0, DomainMode::kPeriodic);

  SUBCASE("annihilates exact forms") {
    const GridForm grad = exterior::d(synth::band_limited(g, 0, 5, 500));
    CHECK(leray_project(grad).sup_norm() <= 1e-10 * grad.sup_norm());
  }

  SUBCASE("fixes co-closed forms") {
    const GridForm cc = exterior::d_star(synth::band_limited(g, 2, 5, 501));
    CHECK((leray_project(cc) - cc).sup_norm() <= 1e-10 * cc.sup_norm());
  }

  SUBCASE("idempotent and self-adjoint on random fields") {
    const GridForm u = synth::band_limited(g, 1, 5, 502);
    const GridForm v = synth::band_limited(g, 1, 5, 503);
    const GridForm pu = leray_project(u);
    CHECK((leray_project(pu) - pu).sup_norm() <= 1e-10 * u.sup_norm());
    CHECK(std::fabs(pu.dot(v) - u.dot(leray_project(v))) <=
          1e-10 * u.l2_norm() * v.l2_norm());
  }

  SUBCASE("projected fields are co-closed") {
    const GridForm u = synth::band_limited(g, 2, 5, 504);  // q = 2 path
    const GridForm pu = leray_project(u);
    CHECK(exterior::d_star(pu).sup_norm() <= 1e-10 * u.sup_norm());
  }

  SUBCASE("zero mode passes through") {
    GridForm u = synth::band_limited(g, 1, 5, 505);
    for (auto& c : u.comps)
      for (auto& v : c) v += 0.75;  // constant offset enlarges the zero mode
    const GridForm pu = leray_project(u);
    auto mean_of = [&](const GridForm& f) {
      double m = 0.0;
      for (double v : f.comps[0]) m += v;
      return m / static_cast<double>(g.points());
    };
    CHECK(mean_of(pu) == doctest::Approx(mean_of(u)).epsilon(1e-12));
  }

  SUBCASE("commutes with the heat semigroup") {
    const GridForm u = synth::band_limited(g, 1, 5, 506);
    GridForm a = leray_project(heat_semigroup(u, 0.21));
    GridForm b = heat_semigroup(leray_project(u), 0.21);
    CHECK((a - b).sup_norm() <= 1e-12 * u.sup_norm());
  }
}

TEST_CASE("potential inverse of d") {
  const Grid g(3, 24, 6.0, DomainMode::kPeriodic);

  SUBCASE("recovers the co-closed potential") {
    const GridForm u = exterior::d_star(synth::band_limited(g, 2, 5, 600));  // co-closed 1-form
    const GridForm gexact = exterior::d(u);
    const GridForm back = phi_inverse_d(gexact);
    CHECK((back - u).sup_norm() <= 1e-10 * u.sup_norm());
  }

  SUBCASE("zero input gives zero") {
    GridForm z(g, 2);
    CHECK(phi_inverse_d(z).sup_norm() == 0.0);
  }

  SUBCASE("right inverse of d") {
    const GridForm gexact = exterior::d(synth::band_limited(g, 1, 5, 601));
    const GridForm pot = phi_inverse_d(gexact);
    CHECK((exterior::d(pot) - gexact).sup_norm() <= 1e-10 * gexact.sup_norm());
    CHECK(exterior::d_star(pot).sup_norm() <= 1e-10 * gexact.sup_norm());
  }

  SUBCASE("rejects non-closed input") {
    const GridForm u = synth::band_limited(g, 2, 5, 602);  // generic, d u != 0
    CHECK_THROWS_AS(phi_inverse_d(u), Error);
  }

  SUBCASE("flags a lost zero mode") {
    GridForm gexact = exterior::d(synth::band_limited(g, 1, 5, 603));
    for (auto& v : gexact.comps[0]) v += 0.5;  // constant is closed but not exact
    bool lost = false;
    phi_inverse_d(gexact, 1e-8, &lost);
    CHECK(lost);
  }
}

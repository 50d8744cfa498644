#include "derham/reference.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "derham/errors.hpp"

namespace derham::reference {
namespace {

// antiderivative of the Burgers initial datum g0 = c A exp(-y^2/s^2)
double g0_integral(const BumpProblem& p, double y) {
  const double a = p.coupling * p.amplitude;
  return a * p.sigma * std::sqrt(std::numbers::pi) / 2.0 * std::erf(y / p.sigma);
}

}  // namespace

double cole_hopf_profile(const BumpProblem& p, double x, double t) {
  if (t <= 0.0) return p.amplitude * std::exp(-x * x / (p.sigma * p.sigma));
  // g(x,t) = int (x-y)/t e^{-G/2mu} dy / int e^{-G/2mu} dy,
  // G(y) = G0(y) + (x-y)^2 / (2t)
  const double spread = std::sqrt(2.0 * p.mu * t);
  const double reach = std::fabs(p.coupling * p.amplitude) * t + p.sigma;
  const double half_width = 12.0 * spread + 3.0 * reach + 2.0;
  const int steps = 8192;  // Simpson, even
  const double lo = x - half_width, dy = 2.0 * half_width / steps;

  // stabilize the exponent against overflow
  double gmin = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= steps; ++i) {
    const double y = lo + i * dy;
    const double G = g0_integral(p, y) + (x - y) * (x - y) / (2.0 * t);
    gmin = std::min(gmin, G);
  }
  double num = 0.0, den = 0.0;
  for (int i = 0; i <= steps; ++i) {
    const double y = lo + i * dy;
    const double G = g0_integral(p, y) + (x - y) * (x - y) / (2.0 * t);
    const double wgt = (i == 0 || i == steps) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    const double e = wgt * std::exp(-(G - gmin) / (2.0 * p.mu));
    num += e * (x - y) / t;
    den += e;
  }
  return num / den / p.coupling;
}

GridForm taylor_green_velocity(const Grid& g, double mu, double t) {
  if (g.n != 2) throw Error(ErrorCode::ShapeMismatch, "vortex reference is two-dimensional");
  const double decay = std::exp(-2.0 * mu * t);
  return GridForm::sample(g, 1, [&](int c, const double* x) {
    return c == 0 ? decay * std::cos(x[0]) * std::sin(x[1])
                  : -decay * std::sin(x[0]) * std::cos(x[1]);
  });
}

GridForm taylor_green_pressure(const Grid& g, double mu, double t) {
  if (g.n != 2) throw Error(ErrorCode::ShapeMismatch, "vortex reference is two-dimensional");
  const double decay = std::exp(-4.0 * mu * t);
  return GridForm::sample(g, 0, [&](int, const double* x) {
    return -decay * (std::cos(2.0 * x[0]) + std::cos(2.0 * x[1])) / 4.0;
  });
}

}  // namespace derham::reference

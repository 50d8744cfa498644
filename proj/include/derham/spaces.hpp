#pragma once

#include <span>
#include <string>
#include <vector>

#include "derham/form.hpp"
#include "derham/trajectory.hpp"

namespace derham::spaces {

// w(x) = sqrt(1 + |x|^2); pairs take the max.
double weight(std::span<const double> x);
double weight_pair(std::span<const double> x, std::span<const double> y);

struct NormParams {
  int s = 0;                  // smoothness
  double lambda = 0.5;        // Hölder exponent in (0, 1]
  double delta = 0.0;         // weight exponent, >= 0
  double lambda_prime = 0.0;  // second exponent of the F-scale; 0 = unset
  int k = 0;                  // extra spatial derivatives of the F-scale
  double decay_tol = 1e-6;    // boundary-pollution gate for derivative taking
  int pair_budget = 100000;   // sampled pairs for the weighted seminorm

  void validate() const;
};

struct NormReport {
  struct Term {
    std::string label;
    double value;
  };
  std::vector<Term> terms;
  double total = 0.0;

  void add(std::string label, double value);
  double term(const std::string& label) const;  // 0 when absent
};

/// sum_{|alpha| <= s} sup_x w(x)^{delta+|alpha|} |d^alpha u(x)|, max over
/// components. Raises DecayViolation (free mode, s >= 1) when the field does
/// not decay inside the box.
NormReport weighted_sup_norm(const GridForm& u, const NormParams& p);

/// max over the sampled pair set {x != y, |x-y| <= |x|/2} of
/// w(x,y)^{delta+lambda} |u(x)-u(y)| / |x-y|^lambda. Pairs are exhaustive for
/// n=2, N<=32, otherwise `pair_budget` seeded quasi-random pairs plus all
/// nearest-neighbor pairs.
double holder_seminorm(const GridForm& u, double lambda, double delta,
                       int pair_budget = 100000);

/// Classical Hölder norm over the ball |x| <= 1/2 (exhaustive grid pairs).
double local_holder_norm(const GridForm& u, double lambda);

/// Full C^{s,lambda,delta} norm: sum_{|alpha|<=s} of
/// [local Hölder + weighted sup + weighted seminorm] of d^alpha u at
/// weight delta+|alpha|; lambda = 0 drops the seminorm terms.
NormReport c_norm(const GridForm& u, const NormParams& p);

/// Discrete L^p over the box with cell measure h^n; components combined
/// through the pointwise Euclidean magnitude.
double lp_norm(const GridForm& u, double p);

/// Anisotropic norm: sum_{|alpha|+2j <= 2s} over terms
///   sup_t ||d^alpha d_t^j u||_{C^{0,lambda,delta+|alpha|}}
/// + the |t'-t''|^{lambda/2} quotient of the C^{0,0,delta+|alpha|} norm.
NormReport aniso_norm(const Trajectory& u, const NormParams& p);

/// F-scale: ||u||_{k+1 scale at lambda} + ||u||_{k scale at lambda_prime},
/// each k-scale being sum_{|beta|<=k} of the anisotropic norm of d^beta u at
/// weight delta+|beta|.
NormReport f_norm(const Trajectory& u, const NormParams& p);

/// Cheap stand-in for the C^{s(0,lambda,delta)}_T norm used as the solver
/// convergence metric: weighted sup + nearest-neighbor seminorm per slice,
/// plus the lambda/2 time quotient over a stride-doubling pair subset.
double proxy_norm(const Trajectory& u, double lambda, double delta);

}  // namespace derham::spaces

#pragma once

#include <string>
#include <vector>

namespace derham::verify {

struct CheckRow {
  std::string name;
  double residual;
  double tolerance;
  bool pass;
};

/// The identity battery: d(d(u)) = 0, d*(d*(u)) = 0, star-star sign law,
/// the curvature-free Laplacian identity d*d + dd* = -Lap, projection
/// idempotence / self-adjointness / annihilation of exact forms,
/// projection-semigroup commutation, heat potential residuals, the
/// quadratic-expansion identity of N and B, and the product-estimate
/// family bound. `n_max` caps the dimensions swept (identity checks run
/// for n = 2..n_max at the given N).
std::vector<CheckRow> run_identity_suite(int n_max = 4, int N = 32);

bool all_pass(const std::vector<CheckRow>& rows);

}  // namespace derham::verify

#pragma once

#include <string>
#include <vector>

#include "derham/form.hpp"

namespace derham::nonlinearity {

/// Coefficient tensors of the bilinear zero-order maps:
///   N(u) = M1(d u (+) d* u, u) + d M2(u, u)
/// M1 maps (component of Lambda^{q+1} (+) Lambda^{q-1}) x Lambda^q -> Lambda^q,
/// M2 maps Lambda^q x Lambda^q -> Lambda^{q-1}. Built-ins are generated as
/// tensors so the generic evaluation path is always the one exercised.
struct NonlinearitySpec {
  int n = 0;
  int q = 0;
  std::string name = "custom";
  double b = 0.0;
  // M1[i][j][l]; i < C(n,q+1) indexes the d-part, the rest the d*-part.
  std::vector<std::vector<std::vector<double>>> M1;
  // M2[i][j][l] with i, j over C(n,q) and l over C(n,q-1).
  std::vector<std::vector<std::vector<double>>> M2;

  static NonlinearitySpec zero(int n, int q);
  /// name in {"lamb", "ps"}; "lamb" requires n = 3 (q = 1),
  /// "ps" any n >= 2 (q = 1) with parameter b. Throws UnsupportedCombination.
  static NonlinearitySpec builtin(const std::string& name, int n, double b = 0.0);
  static NonlinearitySpec custom(int n, int q,
                                 std::vector<std::vector<std::vector<double>>> M1,
                                 std::vector<std::vector<std::vector<double>>> M2);

  bool is_zero() const;
  void validate() const;  // tensor shapes against binomial counts
};

/// N_q u, evaluated through the generic tensors.
GridForm apply_N(const NonlinearitySpec& spec, const GridForm& u);

/// Symmetric bilinear form with B(u, u) = 2 N(u):
/// B(w,u) = M1(Dw,u) + d M2(w,u) + M1(Du,w) + d M2(u,w).
GridForm apply_B(const NonlinearitySpec& spec, const GridForm& w, const GridForm& u);

}  // namespace derham::nonlinearity

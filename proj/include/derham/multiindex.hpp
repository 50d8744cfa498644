#pragma once

#include <span>
#include <vector>

namespace derham {

int binomial(int n, int k);  // 0 for k < 0 or k > n

/// Component bookkeeping for q-forms in n dimensions: the lexicographically
/// sorted list of strictly increasing q-tuples from {1..n} (stored 0-based),
/// rank lookup, and the sign combinatorics shared by wedge, star, d and d*.
/// Degrees outside [0, n] are representable with zero components, which lets
/// d and d* fall off the ends of the complex without special cases.
class MultiIndexTable {
 public:
  MultiIndexTable(int n, int q);

  int n() const { return n_; }
  int q() const { return q_; }
  int count() const { return static_cast<int>(tuples_.size()); }

  std::span<const int> tuple(int rank) const;
  int rank(std::span<const int> tuple) const;  // -1 when absent

  // Sign (-1)^{#(i in I : i < axis)} of dx_axis ^ dx_I sorted into dx_{I u axis},
  // together with the destination rank in the degree-(q+1) table.
  // Valid only when axis is not in tuple(rank).
  struct Insertion {
    int dst = -1;
    int sign = 0;
  };
  Insertion insert(int rank, int axis, const MultiIndexTable& up) const;

  bool contains(int rank, int axis) const;

  // Sign of the permutation (I, I^c) of (1..n) and the rank of I^c in the
  // degree-(n-q) table.
  struct Complement {
    int dst = -1;
    int sign = 0;
  };
  Complement complement(int rank, const MultiIndexTable& co) const;

  // Sign merging tuple(rank) with other.tuple(other_rank); 0 when they share
  // an axis. dst indexes the degree-(q+p) table.
  struct Merge {
    int dst = -1;
    int sign = 0;
  };
  Merge merge(int rank, const MultiIndexTable& other, int other_rank,
              const MultiIndexTable& up) const;

 private:
  int n_, q_;
  std::vector<std::vector<int>> tuples_;
};

/// One (source component, axis, destination component, sign) entry of the
/// assembled symbol of d (or, transposed, of d*).
struct DerivTerm {
  int src;
  int axis;
  int dst;
  double sign;
};

// (d u)_K = sum over terms: sign * d/dx_axis u_src, u of degree q.
std::vector<DerivTerm> exterior_deriv_terms(int n, int q);
// (d* w)_I = sum over terms: sign * d/dx_axis w_src, w of degree q (output q-1).
std::vector<DerivTerm> codifferential_terms(int n, int q);

}  // namespace derham

#include "derham/multiindex.hpp"

#include <algorithm>

#include "derham/errors.hpp"

namespace derham {

int binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return static_cast<int>(r);
}

MultiIndexTable::MultiIndexTable(int n, int q) : n_(n), q_(q) {
  if (n < 1 || n > 6) throw Error(ErrorCode::ShapeMismatch, "dimension must be in [1,6]");
  if (q < 0 || q > n) return;  // zero components, still a valid table
  // lexicographic enumeration of increasing q-tuples
  std::vector<int> t(q);
  for (int i = 0; i < q; ++i) t[i] = i;
  while (true) {
    tuples_.push_back(t);
    int i = q - 1;
    while (i >= 0 && t[i] == n - q + i) --i;
    if (i < 0) break;
    ++t[i];
    for (int j = i + 1; j < q; ++j) t[j] = t[j - 1] + 1;
  }
  if (q == 0) tuples_.assign(1, {});
}

std::span<const int> MultiIndexTable::tuple(int rank) const {
  return {tuples_[rank].data(), tuples_[rank].size()};
}

int MultiIndexTable::rank(std::span<const int> t) const {
  auto it = std::lower_bound(tuples_.begin(), tuples_.end(), t,
                             [](const std::vector<int>& a, std::span<const int> b) {
                               return std::lexicographical_compare(a.begin(), a.end(), b.begin(),
                                                                   b.end());
                             });
  if (it == tuples_.end() || !std::equal(it->begin(), it->end(), t.begin(), t.end())) return -1;
  return static_cast<int>(it - tuples_.begin());
}

bool MultiIndexTable::contains(int rank, int axis) const {
  const auto& t = tuples_[rank];
  return std::binary_search(t.begin(), t.end(), axis);
}

MultiIndexTable::Insertion MultiIndexTable::insert(int rank, int axis,
                                                   const MultiIndexTable& up) const {
  const auto& t = tuples_[rank];
  std::vector<int> merged;
  merged.reserve(t.size() + 1);
  int below = 0;
  for (int a : t)
    if (a < axis) ++below;
  merged.assign(t.begin(), t.end());
  merged.insert(merged.begin() + below, axis);
  return {up.rank(merged), (below % 2 == 0) ? 1 : -1};
}

MultiIndexTable::Complement MultiIndexTable::complement(int rank,
                                                        const MultiIndexTable& co) const {
  const auto& t = tuples_[rank];
  std::vector<int> comp;
  comp.reserve(n_ - t.size());
  for (int a = 0; a < n_; ++a)
    if (!std::binary_search(t.begin(), t.end(), a)) comp.push_back(a);
  // parity of (I, I^c) as a permutation of (0..n-1): count inversions across
  // the boundary (pairs a in I, b in I^c with a > b)
  int inv = 0;
  for (int a : t)
    for (int b : comp)
      if (a > b) ++inv;
  return {co.rank(comp), (inv % 2 == 0) ? 1 : -1};
}

MultiIndexTable::Merge MultiIndexTable::merge(int rank, const MultiIndexTable& other,
                                              int other_rank, const MultiIndexTable& up) const {
  const auto& a = tuples_[rank];
  const auto& b = other.tuples_[other_rank];
  for (int ax : a)
    if (std::binary_search(b.begin(), b.end(), ax)) return {-1, 0};
  std::vector<int> merged(a.begin(), a.end());
  merged.insert(merged.end(), b.begin(), b.end());
  int inv = 0;
  for (int x : a)
    for (int y : b)
      if (x > y) ++inv;
  std::sort(merged.begin(), merged.end());
  return {up.rank(merged), (inv % 2 == 0) ? 1 : -1};
}

std::vector<DerivTerm> exterior_deriv_terms(int n, int q) {
  std::vector<DerivTerm> terms;
  if (q < 0 || q >= n) return terms;
  MultiIndexTable lo(n, q), hi(n, q + 1);
  for (int src = 0; src < lo.count(); ++src)
    for (int axis = 0; axis < n; ++axis) {
      if (lo.contains(src, axis)) continue;
      const auto ins = lo.insert(src, axis, hi);
      terms.push_back({src, axis, ins.dst, static_cast<double>(ins.sign)});
    }
  return terms;
}

std::vector<DerivTerm> codifferential_terms(int n, int q) {
  std::vector<DerivTerm> terms;
  if (q <= 0 || q > n) return terms;
  MultiIndexTable lo(n, q - 1), hi(n, q);
  for (int dst = 0; dst < lo.count(); ++dst)
    for (int axis = 0; axis < n; ++axis) {
      if (lo.contains(dst, axis)) continue;
      const auto ins = lo.insert(dst, axis, hi);
      terms.push_back({ins.dst, axis, dst, -static_cast<double>(ins.sign)});
    }
  return terms;
}

}  // namespace derham

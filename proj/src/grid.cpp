#include "derham/grid.hpp"

#include <cmath>
#include <numbers>

#include "derham/errors.hpp"

namespace derham {

Grid::Grid(int n_, int N_, double L_, DomainMode mode_) : n(n_), N(N_), L(L_), mode(mode_) {
  if (n < 1 || n > 6) throw Error(ErrorCode::ShapeMismatch, "grid dimension must be in [1,6]");
  if (N < 2 || N % 2 != 0) throw Error(ErrorCode::ShapeMismatch, "grid size must be even, >= 2");
  if (!(L > 0.0)) throw Error(ErrorCode::ShapeMismatch, "box half-width must be positive");
}

double Grid::cell_measure() const {
  double m = 1.0;
  for (int i = 0; i < n; ++i) m *= h();
  return m;
}

std::array<int, 6> Grid::unflatten(std::int64_t flat) const {
  std::array<int, 6> j{};
  for (int i = 0; i < n; ++i) {
    j[i] = static_cast<int>(flat % N);
    flat /= N;
  }
  return j;
}

std::int64_t Grid::flatten(const std::array<int, 6>& j) const {
  std::int64_t flat = 0;
  for (int i = n - 1; i >= 0; --i) flat = flat * N + j[i];
  return flat;
}

double Grid::wavenumber(int m) const {
  if (m == N / 2) return 0.0;  // zeroed Nyquist, see header
  const int shifted = (m < N / 2) ? m : m - N;
  return std::numbers::pi / L * shifted;
}

const std::vector<double>& Grid::wavenumbers() const {
  if (wavenumbers_.empty()) {
    wavenumbers_.resize(N);
    for (int m = 0; m < N; ++m) wavenumbers_[m] = wavenumber(m);
  }
  return wavenumbers_;
}

}  // namespace derham

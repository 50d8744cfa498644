#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace derham {

enum class DomainMode {
  kFree,      // periodic box emulating decaying fields on R^n (default)
  kPeriodic,  // honestly periodic problem; decay checks disabled
};

/// Uniform periodic grid on [-L, L)^n, N points per axis, x1 varying fastest.
struct Grid {
  int n = 0;
  int N = 0;
  double L = 0.0;
  DomainMode mode = DomainMode::kFree;

  Grid() = default;
  Grid(int n_, int N_, double L_, DomainMode mode_ = DomainMode::kFree);

  std::int64_t points() const {
    std::int64_t p = 1;
    for (int i = 0; i < n; ++i) p *= N;
    return p;
  }
  double h() const { return 2.0 * L / N; }
  double cell_measure() const;

  double coord(int j) const { return -L + h() * j; }

  // flat index <-> per-axis indices (x1 fastest)
  std::array<int, 6> unflatten(std::int64_t flat) const;
  std::int64_t flatten(const std::array<int, 6>& j) const;

  // Wavenumber along one axis for FFT bin m in [0, N): (pi/L) * m~ with
  // m~ in {-N/2..N/2-1}, except the Nyquist bin which is zeroed so that
  // first-derivative symbols preserve conjugate symmetry of real fields.
  double wavenumber(int m) const;
  // The shared per-axis wavenumber lookup used by every operator symbol.
  const std::vector<double>& wavenumbers() const;

  bool operator==(const Grid& o) const { return n == o.n && N == o.N && L == o.L; }

 private:
  mutable std::vector<double> wavenumbers_;
};

}  // namespace derham

#pragma once

#include <complex>
#include <cstddef>

// Data-parallel inner loops used by the spectral operators and norm
// estimators. Every kernel has a scalar reference implementation and an
// AVX2 variant; the active table is selected once at startup (cpuid,
// overridable with DERHAM_NS_SIMD=scalar|avx2|auto). The two variants are
// equivalence-tested against each other; elementwise kernels agree
// bit-for-bit (both use fused multiply-add), reductions to ~1 ulp per lane.

namespace derham::kernels {

struct Ops {
  const char* name;

  // out[i] = a*x[i] + b*y[i]; out may alias x or y.
  void (*axpby)(std::size_t len, double a, const double* x, double b, const double* y,
                double* out);
  // acc[i] += s * a[i] * b[i]
  void (*fmadd_mul)(std::size_t len, double s, const double* a, const double* b, double* acc);
  // z[i] *= m[i]                  (complex z against a real multiplier)
  void (*cmul_real)(std::size_t len, const double* m, std::complex<double>* z);
  // z[i] *= i * k[i]              (first-derivative symbol)
  void (*cmul_ik)(std::size_t len, const double* k, std::complex<double>* z);
  // acc[i] += s * (i * k[i]) * z[i]
  void (*cfmadd_ik)(std::size_t len, double s, const double* k, const std::complex<double>* z,
                    std::complex<double>* acc);
  // max_i w[i] * |u[i]|
  double (*weighted_abs_max)(std::size_t len, const double* w, const double* u);
  // max_i |u[i]|
  double (*abs_max)(std::size_t len, const double* u);
  // sum_i x[i] * y[i]
  double (*dot)(std::size_t len, const double* x, const double* y);
};

const Ops& scalar_ops();
const Ops* avx2_ops();  // nullptr when unsupported at build or run time

// Table selected at first use; DERHAM_NS_SIMD overrides auto-detection.
const Ops& active();

}  // namespace derham::kernels

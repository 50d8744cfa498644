#include <cmath>

#include "derham/kernels.hpp"

// Reference kernels. Scalar loops use std::fma where the AVX2 variants use
// fused multiply-add so the elementwise kernels match bit-for-bit.

namespace derham::kernels {
namespace {

void axpby_scalar(std::size_t len, double a, const double* x, double b, const double* y,
                  double* out) {
  for (std::size_t i = 0; i < len; ++i) out[i] = std::fma(a, x[i], b * y[i]);
}

void fmadd_mul_scalar(std::size_t len, double s, const double* a, const double* b, double* acc) {
  for (std::size_t i = 0; i < len; ++i) acc[i] = std::fma(s * a[i], b[i], acc[i]);
}

void cmul_real_scalar(std::size_t len, const double* m, std::complex<double>* z) {
  double* d = reinterpret_cast<double*>(z);
  for (std::size_t i = 0; i < len; ++i) {
    d[2 * i] *= m[i];
    d[2 * i + 1] *= m[i];
  }
}

void cmul_ik_scalar(std::size_t len, const double* k, std::complex<double>* z) {
  double* d = reinterpret_cast<double*>(z);
  for (std::size_t i = 0; i < len; ++i) {
    const double re = d[2 * i], im = d[2 * i + 1];
    d[2 * i] = -k[i] * im;
    d[2 * i + 1] = k[i] * re;
  }
}

void cfmadd_ik_scalar(std::size_t len, double s, const double* k, const std::complex<double>* z,
                      std::complex<double>* acc) {
  const double* zs = reinterpret_cast<const double*>(z);
  double* a = reinterpret_cast<double*>(acc);
  for (std::size_t i = 0; i < len; ++i) {
    const double sk = s * k[i];
    a[2 * i] = std::fma(-sk, zs[2 * i + 1], a[2 * i]);
    a[2 * i + 1] = std::fma(sk, zs[2 * i], a[2 * i + 1]);
  }
}

double weighted_abs_max_scalar(std::size_t len, const double* w, const double* u) {
  double m = 0.0;
  for (std::size_t i = 0; i < len; ++i) {
    const double v = w[i] * std::fabs(u[i]);
    if (v > m) m = v;
  }
  return m;
}

double abs_max_scalar(std::size_t len, const double* u) {
  double m = 0.0;
  for (std::size_t i = 0; i < len; ++i) {
    const double v = std::fabs(u[i]);
    if (v > m) m = v;
  }
  return m;
}

double dot_scalar(std::size_t len, const double* x, const double* y) {
  double s = 0.0;
  for (std::size_t i = 0; i < len; ++i) s = std::fma(x[i], y[i], s);
  return s;
}

}  // namespace

const Ops& scalar_ops() {
  static const Ops ops = {
      "scalar",        axpby_scalar,  fmadd_mul_scalar,        cmul_real_scalar,
      cmul_ik_scalar,  cfmadd_ik_scalar, weighted_abs_max_scalar, abs_max_scalar,
      dot_scalar,
  };
  return ops;
}

}  // namespace derham::kernels

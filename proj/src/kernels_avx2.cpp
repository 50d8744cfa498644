#include "derham/kernels.hpp"

#if defined(__x86_64__) && defined(DERHAM_BUILD_AVX2)

#include <immintrin.h>

#include <cmath>

namespace derham::kernels {
namespace {

void axpby_avx2(std::size_t len, double a, const double* x, double b, const double* y,
                double* out) {
  const __m256d va = _mm256_set1_pd(a);
  const __m256d vb = _mm256_set1_pd(b);
  std::size_t i = 0;
  for (; i + 4 <= len; i += 4) {
    const __m256d vx = _mm256_loadu_pd(x + i);
    const __m256d vy = _mm256_loadu_pd(y + i);
    _mm256_storeu_pd(out + i, _mm256_fmadd_pd(va, vx, _mm256_mul_pd(vb, vy)));
  }
  for (; i < len; ++i) out[i] = std::fma(a, x[i], b * y[i]);
}

void fmadd_mul_avx2(std::size_t len, double s, const double* a, const double* b, double* acc) {
  const __m256d vs = _mm256_set1_pd(s);
  std::size_t i = 0;
  for (; i + 4 <= len; i += 4) {
    const __m256d va = _mm256_mul_pd(vs, _mm256_loadu_pd(a + i));
    const __m256d vb = _mm256_loadu_pd(b + i);
    _mm256_storeu_pd(acc + i, _mm256_fmadd_pd(va, vb, _mm256_loadu_pd(acc + i)));
  }
  for (; i < len; ++i) acc[i] = std::fma(s * a[i], b[i], acc[i]);
}

void cmul_real_avx2(std::size_t len, const double* m, std::complex<double>* z) {
  double* d = reinterpret_cast<double*>(z);
  std::size_t i = 0;
  for (; i + 2 <= len; i += 2) {
    // [m0, m1] -> [m0, m0, m1, m1] against interleaved [re0, im0, re1, im1]
    const __m128d mp = _mm_loadu_pd(m + i);
    const __m256d md = _mm256_permute4x64_pd(_mm256_castpd128_pd256(mp), 0b01010000);
    const __m256d vz = _mm256_loadu_pd(d + 2 * i);
    _mm256_storeu_pd(d + 2 * i, _mm256_mul_pd(md, vz));
  }
  for (; i < len; ++i) {
    d[2 * i] *= m[i];
    d[2 * i + 1] *= m[i];
  }
}

void cmul_ik_avx2(std::size_t len, const double* k, std::complex<double>* z) {
  double* d = reinterpret_cast<double*>(z);
  const __m256d sign = _mm256_set_pd(0.0, -0.0, 0.0, -0.0);  // negate lanes 0 and 2
  std::size_t i = 0;
  for (; i + 2 <= len; i += 2) {
    const __m128d kp = _mm_loadu_pd(k + i);
    const __m256d kd = _mm256_permute4x64_pd(_mm256_castpd128_pd256(kp), 0b01010000);
    const __m256d vz = _mm256_loadu_pd(d + 2 * i);
    const __m256d sw = _mm256_permute_pd(vz, 0b0101);  // [im0, re0, im1, re1]
    _mm256_storeu_pd(d + 2 * i, _mm256_mul_pd(_mm256_xor_pd(kd, sign), sw));
  }
  for (; i < len; ++i) {
    const double re = d[2 * i], im = d[2 * i + 1];
    d[2 * i] = -k[i] * im;
    d[2 * i + 1] = k[i] * re;
  }
}

void cfmadd_ik_avx2(std::size_t len, double s, const double* k, const std::complex<double>* z,
                    std::complex<double>* acc) {
  const double* zs = reinterpret_cast<const double*>(z);
  double* a = reinterpret_cast<double*>(acc);
  const __m256d vs = _mm256_set1_pd(s);
  const __m256d sign = _mm256_set_pd(0.0, -0.0, 0.0, -0.0);
  std::size_t i = 0;
  for (; i + 2 <= len; i += 2) {
    const __m128d kp = _mm_loadu_pd(k + i);
    const __m256d kd = _mm256_mul_pd(vs, _mm256_permute4x64_pd(_mm256_castpd128_pd256(kp), 0b01010000));
    const __m256d sw = _mm256_permute_pd(_mm256_loadu_pd(zs + 2 * i), 0b0101);
    const __m256d va = _mm256_loadu_pd(a + 2 * i);
    _mm256_storeu_pd(a + 2 * i, _mm256_fmadd_pd(_mm256_xor_pd(kd, sign), sw, va));
  }
  for (; i < len; ++i) {
    const double sk = s * k[i];
    a[2 * i] = std::fma(-sk, zs[2 * i + 1], a[2 * i]);
    a[2 * i + 1] = std::fma(sk, zs[2 * i], a[2 * i + 1]);
  }
}

double weighted_abs_max_avx2(std::size_t len, const double* w, const double* u) {
  const __m256d absmask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
  __m256d vm = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= len; i += 4) {
    const __m256d au = _mm256_and_pd(absmask, _mm256_loadu_pd(u + i));
    vm = _mm256_max_pd(vm, _mm256_mul_pd(_mm256_loadu_pd(w + i), au));
  }
  double lanes[4];
  _mm256_storeu_pd(lanes, vm);
  double m = lanes[0];
  for (int l = 1; l < 4; ++l)
    if (lanes[l] > m) m = lanes[l];
  for (; i < len; ++i) {
    const double v = w[i] * std::fabs(u[i]);
    if (v > m) m = v;
  }
  return m;
}

double abs_max_avx2(std::size_t len, const double* u) {
  const __m256d absmask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
  __m256d vm = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= len; i += 4)
    vm = _mm256_max_pd(vm, _mm256_and_pd(absmask, _mm256_loadu_pd(u + i)));
  double lanes[4];
  _mm256_storeu_pd(lanes, vm);
  double m = lanes[0];
  for (int l = 1; l < 4; ++l)
    if (lanes[l] > m) m = lanes[l];
  for (; i < len; ++i) {
    const double v = std::fabs(u[i]);
    if (v > m) m = v;
  }
  return m;
}

double dot_avx2(std::size_t len, const double* x, const double* y) {
  __m256d vs = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= len; i += 4)
    vs = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), vs);
  double lanes[4];
  _mm256_storeu_pd(lanes, vs);
  double s = ((lanes[0] + lanes[1]) + (lanes[2] + lanes[3]));
  for (; i < len; ++i) s = std::fma(x[i], y[i], s);
  return s;
}

}  // namespace

const Ops* avx2_ops() {
  static const Ops ops = {
      "avx2",        axpby_avx2,  fmadd_mul_avx2,        cmul_real_avx2,
      cmul_ik_avx2,  cfmadd_ik_avx2, weighted_abs_max_avx2, abs_max_avx2,
      dot_avx2,
  };
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) return &ops;
  return nullptr;
}

}  // namespace derham::kernels

#else

namespace derham::kernels {
const Ops* avx2_ops() { return nullptr; }
}  // namespace derham::kernels

#endif

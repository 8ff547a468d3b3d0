// AVX2/FMA variants of the batch kernels. Each function carries its own
// target attribute, so the file builds without global -mavx2 and is only
// reached after runtime detection.
#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "cpn/numeric/kernels.hpp"

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>
#define CPN_AVX2 __attribute__((target("avx2,fma")))
#endif

namespace cpn::simd::detail {

#if defined(CPN_AVX2)

namespace {

// (a·b) for two interleaved complex numbers per register.
CPN_AVX2 inline __m256d mul2(__m256d a, __m256d b) {
  const __m256d b_re = _mm256_movedup_pd(b);
  const __m256d b_im = _mm256_permute_pd(b, 0xF);
  const __m256d a_sw = _mm256_permute_pd(a, 0x5);
  return _mm256_fmaddsub_pd(a, b_re, _mm256_mul_pd(a_sw, b_im));
}

}  // namespace

CPN_AVX2 void cmul_avx2(const cd* a, const cd* b, cd* out, std::size_t n) {
  const auto* pa = reinterpret_cast<const double*>(a);
  const auto* pb = reinterpret_cast<const double*>(b);
  auto* po = reinterpret_cast<double*>(out);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    _mm256_storeu_pd(po + 2 * i, mul2(_mm256_loadu_pd(pa + 2 * i), _mm256_loadu_pd(pb + 2 * i)));
  }
  for (; i < n; ++i) {
    const double ar = a[i].real(), ai = a[i].imag(), br = b[i].real(), bi = b[i].imag();
    out[i] = cd(ar * br - ai * bi, ai * br + ar * bi);
  }
}

CPN_AVX2 void accumulate_term_avx2(cd c, const cd* x, const cd* y, cd* out, std::size_t n) {
  const auto* px = reinterpret_cast<const double*>(x);
  const auto* py = reinterpret_cast<const double*>(y);
  auto* po = reinterpret_cast<double*>(out);
  const __m256d conj_mask = _mm256_set_pd(-0.0, 0.0, -0.0, 0.0);
  const __m256d cc = _mm256_set_pd(c.imag(), c.real(), c.imag(), c.real());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d yc = _mm256_xor_pd(_mm256_loadu_pd(py + 2 * i), conj_mask);
    const __m256d t = mul2(_mm256_loadu_pd(px + 2 * i), yc);
    _mm256_storeu_pd(po + 2 * i, _mm256_add_pd(_mm256_loadu_pd(po + 2 * i), mul2(cc, t)));
  }
  for (; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag(), yr = y[i].real(), yi = -y[i].imag();
    const double tr = xr * yr - xi * yi;
    const double ti = xi * yr + xr * yi;
    out[i] += cd(c.real() * tr - c.imag() * ti, c.imag() * tr + c.real() * ti);
  }
}

CPN_AVX2 double max_abs_avx2(const cd* x, std::size_t n) {
  const auto* px = reinterpret_cast<const double*>(x);
  __m256d m = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d v = _mm256_loadu_pd(px + 2 * i);
    const __m256d sq = _mm256_mul_pd(v, v);
    m = _mm256_max_pd(m, _mm256_hadd_pd(sq, sq));
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, m);
  double best = std::max(lanes[0], lanes[2]);
  for (; i < n; ++i) best = std::max(best, x[i].real() * x[i].real() + x[i].imag() * x[i].imag());
  return std::sqrt(best);
}

#else

void cmul_avx2(const cd*, const cd*, cd*, std::size_t) { std::abort(); }
void accumulate_term_avx2(cd, const cd*, const cd*, cd*, std::size_t) { std::abort(); }
double max_abs_avx2(const cd*, std::size_t) { std::abort(); }

#endif

}  // namespace cpn::simd::detail

#include "cpn/numeric/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace cpn::simd {

namespace detail {
void cmul_avx2(const cd* a, const cd* b, cd* out, std::size_t n);
void accumulate_term_avx2(cd c, const cd* x, const cd* y, cd* out, std::size_t n);
double max_abs_avx2(const cd* x, std::size_t n);
}  // namespace detail

namespace {

void cmul_scalar(const cd* a, const cd* b, cd* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double ar = a[i].real(), ai = a[i].imag(), br = b[i].real(), bi = b[i].imag();
    out[i] = cd(ar * br - ai * bi, ai * br + ar * bi);
  }
}

void accumulate_term_scalar(cd c, const cd* x, const cd* y, cd* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag(), yr = y[i].real(), yi = -y[i].imag();
    const double tr = xr * yr - xi * yi;
    const double ti = xi * yr + xr * yi;
    out[i] += cd(c.real() * tr - c.imag() * ti, c.imag() * tr + c.real() * ti);
  }
}

double max_abs_scalar(const cd* x, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) m = std::max(m, x[i].real() * x[i].real() + x[i].imag() * x[i].imag());
  return std::sqrt(m);
}

const Kernels kScalar{Level::Scalar, cmul_scalar, accumulate_term_scalar, max_abs_scalar};
const Kernels kAvx2{Level::Avx2, detail::cmul_avx2, detail::accumulate_term_avx2, detail::max_abs_avx2};

const Kernels* initial() {
  const char* env = std::getenv("CPN_SIMD");
  if (env != nullptr && std::string(env) == "scalar") return &kScalar;
  return cpu_has_avx2() ? &kAvx2 : &kScalar;
}

const Kernels*& current() {
  static const Kernels* k = initial();
  return k;
}

}  // namespace

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const Kernels& scalar_kernels() { return kScalar; }

const Kernels& avx2_kernels() {
  if (!cpu_has_avx2()) throw std::runtime_error("AVX2/FMA not supported on this CPU");
  return kAvx2;
}

const Kernels& active() { return *current(); }

void select(Level level) { current() = level == Level::Avx2 ? &avx2_kernels() : &kScalar; }

std::string_view level_name(Level level) { return level == Level::Avx2 ? "avx2" : "scalar"; }

}  // namespace cpn::simd

#pragma once

#include <complex>
#include <cstddef>
#include <string_view>

namespace cpn::simd {

using cd = std::complex<double>;

enum class Level { Scalar, Avx2 };

/// Batch kernels over interleaved complex arrays. Inputs must be finite.
struct Kernels {
  Level level;
  /// out[i] = a[i]·b[i]; out may alias a or b.
  void (*cmul)(const cd* a, const cd* b, cd* out, std::size_t n);
  /// out[i] += c·x[i]·conj(y[i])
  void (*accumulate_term)(cd c, const cd* x, const cd* y, cd* out, std::size_t n);
  /// max_i |x[i]|, 0 for n = 0.
  double (*max_abs)(const cd* x, std::size_t n);
};

const Kernels& scalar_kernels();
/// Throws std::runtime_error when the CPU lacks AVX2/FMA.
const Kernels& avx2_kernels();

bool cpu_has_avx2();

/// Kernels selected at first use: AVX2 when supported, unless the
/// environment variable CPN_SIMD=scalar forces the reference path.
const Kernels& active();

/// Overrides the active selection (tests, benchmarks).
void select(Level level);

std::string_view level_name(Level level);

}  // namespace cpn::simd

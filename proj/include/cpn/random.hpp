#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "cpn/matrix.hpp"

namespace cpn {

inline constexpr std::uint64_t kDefaultSeed = 20240917;

/// Deterministic source for randomized identity checks. Uses raw engine
/// output only (std distributions are implementation-defined), so a seed
/// reproduces the same inputs on every platform.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed) : engine_(seed) {}

  /// Uniform-ish integer in [lo, hi].
  long range(long lo, long hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<long>(engine_() % span);
  }
  bool coin() { return (engine_() & 1U) != 0; }

  template <Coefficient C>
  C gaussian_integer(long bound) {
    const long re = range(-bound, bound);
    const long im = range(-bound, bound);
    if constexpr (CoeffTraits<C>::exact) {
      return ExactComplex(mpq_class(re), mpq_class(im));
    } else {
      return C(static_cast<double>(re), static_cast<double>(im));
    }
  }

  /// Nonzero polynomial with up to `terms` terms and partial degrees ≤ max_degree.
  template <Coefficient C>
  BiPoly<C> polynomial(int terms, std::uint32_t max_degree, long bound = 3) {
    std::vector<typename BiPoly<C>::Term> out;
    const int count = static_cast<int>(range(1, terms));
    for (int k = 0; k < count; ++k) {
      Monomial m{static_cast<std::uint32_t>(range(0, max_degree)), static_cast<std::uint32_t>(range(0, max_degree))};
      out.emplace_back(m, gaussian_integer<C>(bound));
    }
    auto p = BiPoly<C>::from_terms(std::move(out));
    return p.is_zero() ? BiPoly<C>(C(1)) : p;
  }

  template <Coefficient C>
  MatrixRF<C> polynomial_matrix(std::size_t n, int terms = 3, std::uint32_t max_degree = 1) {
    MatrixRF<C> m(n);
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) m(r, c) = RatFn<C>(polynomial<C>(terms, max_degree));
    }
    return m;
  }

  std::mt19937_64& engine() noexcept { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace cpn

#pragma once

#include <cmath>
#include <complex>
#include <concepts>
#include <string>

#include "cpn/errors.hpp"
#include "cpn/exact_complex.hpp"

namespace cpn {

using FloatComplex = std::complex<double>;

/// Per-ring policy for polynomial coefficients.
///
/// The exact ring decides zero structurally. The floating ring treats a
/// coefficient as zero when it is negligible relative to the largest
/// coefficient of the polynomial it lives in (see BiPoly::canonicalize).
template <class C>
struct CoeffTraits;

template <>
struct CoeffTraits<ExactComplex> {
  static constexpr bool exact = true;
  static constexpr const char* name = "exact";

  static bool is_zero(const ExactComplex& c) { return c.is_zero(); }
  static ExactComplex conj(const ExactComplex& c) { return c.conj(); }
  static ExactComplex from_exact(const ExactComplex& c) { return c; }
  static FloatComplex to_complex(const ExactComplex& c) { return c.to_complex(); }
  static double magnitude(const ExactComplex& c) { return std::abs(c.to_complex()); }
  static ExactComplex imaginary_unit() { return ExactComplex::i(); }
};

template <>
struct CoeffTraits<FloatComplex> {
  static constexpr bool exact = false;
  static constexpr const char* name = "float";

  /// Coefficients below this fraction of the polynomial's largest coefficient
  /// are dropped on canonicalization.
  static constexpr double drop_tolerance = 1e-13;
  /// Remainder threshold, relative to the dividend, for accepting an exact
  /// division in the floating ring.
  static constexpr double division_tolerance = 1e-10;

  static bool is_zero(const FloatComplex& c) { return c.real() == 0.0 && c.imag() == 0.0; }
  static FloatComplex conj(const FloatComplex& c) { return std::conj(c); }
  static FloatComplex from_exact(const ExactComplex& c) { return c.to_complex(); }
  static FloatComplex to_complex(const FloatComplex& c) { return c; }
  static double magnitude(const FloatComplex& c) { return std::abs(c); }
  static FloatComplex imaginary_unit() { return {0.0, 1.0}; }

  static void check_finite(const FloatComplex& c) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw NonFiniteCoefficient("non-finite floating coefficient");
    }
  }
};

template <class C>
concept Coefficient = requires(const C& a, const C& b) {
  { a + b } -> std::convertible_to<C>;
  { a - b } -> std::convertible_to<C>;
  { a * b } -> std::convertible_to<C>;
  { a / b } -> std::convertible_to<C>;
  { CoeffTraits<C>::is_zero(a) } -> std::convertible_to<bool>;
  { CoeffTraits<C>::conj(a) } -> std::convertible_to<C>;
  { CoeffTraits<C>::to_complex(a) } -> std::convertible_to<FloatComplex>;
};

}  // namespace cpn

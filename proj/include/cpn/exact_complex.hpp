#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstddef>
#include <functional>
#include <ostream>
#include <string>

namespace cpn {

/// Gaussian rational re + i·im with arbitrary-precision components.
///
/// Both components are kept in lowest terms (GMP canonical form), so equality
/// is structural.
class ExactComplex {
 public:
  ExactComplex() = default;
  ExactComplex(long re) : re_(re) {}  // NOLINT(google-explicit-constructor)
  ExactComplex(mpq_class re, mpq_class im = 0);
  ExactComplex(long num, long den);

  static ExactComplex i() { return ExactComplex(mpq_class(0), mpq_class(1)); }

  const mpq_class& re() const noexcept { return re_; }
  const mpq_class& im() const noexcept { return im_; }

  bool is_zero() const noexcept { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_one() const noexcept { return sgn(im_) == 0 && re_ == 1; }
  bool is_real() const noexcept { return sgn(im_) == 0; }

  ExactComplex conj() const { return {re_, -im_}; }
  /// |z|² = z·conj(z), always real.
  mpq_class norm2() const { return re_ * re_ + im_ * im_; }
  ExactComplex inverse() const;

  std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }

  ExactComplex& operator+=(const ExactComplex& o);
  ExactComplex& operator-=(const ExactComplex& o);
  ExactComplex& operator*=(const ExactComplex& o);
  ExactComplex& operator/=(const ExactComplex& o);

  friend ExactComplex operator+(ExactComplex a, const ExactComplex& b) { return a += b; }
  friend ExactComplex operator-(ExactComplex a, const ExactComplex& b) { return a -= b; }
  friend ExactComplex operator*(ExactComplex a, const ExactComplex& b) { return a *= b; }
  friend ExactComplex operator/(ExactComplex a, const ExactComplex& b) { return a /= b; }
  friend ExactComplex operator-(const ExactComplex& a) { return {-a.re_, -a.im_}; }

  friend bool operator==(const ExactComplex& a, const ExactComplex& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const ExactComplex& a, const ExactComplex& b) { return !(a == b); }

  /// Text form accepted by the polynomial parser: "3/2", "-i", "(1 + 2*i)".
  std::string to_string() const;

  std::size_t hash() const;

 private:
  mpq_class re_;
  mpq_class im_;
};

std::ostream& operator<<(std::ostream& os, const ExactComplex& z);

}  // namespace cpn

template <>
struct std::hash<cpn::ExactComplex> {
  std::size_t operator()(const cpn::ExactComplex& z) const { return z.hash(); }
};

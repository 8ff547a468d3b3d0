#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "cpn/errors.hpp"

namespace cpn {

/// Small dense complex matrix, row-major. Used for pointwise evaluations.
class CMatrix {
 public:
  using value_type = std::complex<double>;

  CMatrix() = default;
  explicit CMatrix(std::size_t n) : n_(n), a_(n * n) {}

  static CMatrix identity(std::size_t n) {
    CMatrix m(n);
    for (std::size_t k = 0; k < n; ++k) m(k, k) = 1.0;
    return m;
  }

  std::size_t dim() const noexcept { return n_; }
  value_type& operator()(std::size_t r, std::size_t c) { return a_[r * n_ + c]; }
  const value_type& operator()(std::size_t r, std::size_t c) const { return a_[r * n_ + c]; }
  const std::vector<value_type>& data() const noexcept { return a_; }

  CMatrix& operator+=(const CMatrix& o) {
    check(o);
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
    return *this;
  }
  CMatrix& operator-=(const CMatrix& o) {
    check(o);
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
    return *this;
  }
  CMatrix& operator*=(value_type s) {
    for (auto& x : a_) x *= s;
    return *this;
  }

  friend CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
  friend CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
  friend CMatrix operator*(CMatrix a, value_type s) { return a *= s; }
  friend CMatrix operator*(value_type s, CMatrix a) { return a *= s; }

  friend CMatrix operator*(const CMatrix& a, const CMatrix& b) {
    a.check(b);
    CMatrix c(a.n_);
    for (std::size_t i = 0; i < a.n_; ++i) {
      for (std::size_t k = 0; k < a.n_; ++k) {
        const value_type aik = a(i, k);
        if (aik == value_type{}) continue;
        for (std::size_t j = 0; j < a.n_; ++j) c(i, j) += aik * b(k, j);
      }
    }
    return c;
  }

  value_type trace() const {
    value_type t = 0.0;
    for (std::size_t k = 0; k < n_; ++k) t += (*this)(k, k);
    return t;
  }

  CMatrix dagger() const {
    CMatrix m(n_);
    for (std::size_t r = 0; r < n_; ++r) {
      for (std::size_t c = 0; c < n_; ++c) m(c, r) = std::conj((*this)(r, c));
    }
    return m;
  }

  /// max |entry|
  double max_norm() const {
    double m = 0.0;
    for (const auto& x : a_) m = std::max(m, std::abs(x));
    return m;
  }

 private:
  void check(const CMatrix& o) const {
    if (o.n_ != n_) throw DimensionMismatch("CMatrix dimension mismatch");
  }

  std::size_t n_ = 0;
  std::vector<value_type> a_;
};

inline CMatrix commutator(const CMatrix& a, const CMatrix& b) { return a * b - b * a; }

}  // namespace cpn

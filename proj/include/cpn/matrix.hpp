#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "cpn/numeric/cmatrix.hpp"
#include "cpn/ratfn.hpp"

namespace cpn {

/// N×N matrix over RatFn, row-major. Houses projectors, immersions and wave
/// functions together with all their derivatives.
template <Coefficient C>
class MatrixRF {
 public:
  using Coeff = C;
  using Entry = RatFn<C>;

  MatrixRF() = default;
  explicit MatrixRF(std::size_t n) : n_(n), a_(n * n) {}

  static MatrixRF zero(std::size_t n) { return MatrixRF(n); }
  static MatrixRF identity(std::size_t n) {
    MatrixRF m(n);
    for (std::size_t k = 0; k < n; ++k) m(k, k) = Entry(C(1));
    return m;
  }
  static MatrixRF from_rows(std::initializer_list<std::initializer_list<Entry>> rows) {
    MatrixRF m(rows.size());
    std::size_t r = 0;
    for (const auto& row : rows) {
      if (row.size() != m.n_) throw DimensionMismatch("from_rows: matrix must be square");
      std::size_t c = 0;
      for (const auto& e : row) m(r, c++) = e;
      ++r;
    }
    return m;
  }

  std::size_t dim() const noexcept { return n_; }
  Entry& operator()(std::size_t r, std::size_t c) { return a_[r * n_ + c]; }
  const Entry& operator()(std::size_t r, std::size_t c) const { return a_[r * n_ + c]; }
  const std::vector<Entry>& entries() const noexcept { return a_; }

  bool is_zero() const {
    for (const auto& e : a_) {
      if (!e.is_zero()) return false;
    }
    return true;
  }

  /// Entrywise cross-multiplied equality.
  friend bool operator==(const MatrixRF& a, const MatrixRF& b) {
    a.check(b);
    for (std::size_t k = 0; k < a.a_.size(); ++k) {
      if (!(a.a_[k] == b.a_[k])) return false;
    }
    return true;
  }

  MatrixRF operator-() const {
    MatrixRF m(*this);
    for (auto& e : m.a_) e = -e;
    return m;
  }

  friend MatrixRF operator+(const MatrixRF& a, const MatrixRF& b) {
    a.check(b);
    MatrixRF m(a.n_);
    for (std::size_t k = 0; k < a.a_.size(); ++k) m.a_[k] = a.a_[k] + b.a_[k];
    return m;
  }

  friend MatrixRF operator-(const MatrixRF& a, const MatrixRF& b) {
    a.check(b);
    MatrixRF m(a.n_);
    for (std::size_t k = 0; k < a.a_.size(); ++k) m.a_[k] = a.a_[k] - b.a_[k];
    return m;
  }

  friend MatrixRF operator*(const MatrixRF& a, const MatrixRF& b) {
    a.check(b);
    const std::size_t n = a.n_;
    MatrixRF m(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        Entry sum;
        for (std::size_t k = 0; k < n; ++k) {
          const Entry& x = a(i, k);
          const Entry& y = b(k, j);
          if (x.is_zero() || y.is_zero()) continue;
          sum += x * y;
        }
        m(i, j) = std::move(sum);
      }
    }
    return m;
  }

  friend MatrixRF operator*(const Entry& s, const MatrixRF& a) { return a.scaled(s); }
  friend MatrixRF operator*(const MatrixRF& a, const Entry& s) { return a.scaled(s); }

  MatrixRF& operator+=(const MatrixRF& o) { return *this = *this + o; }
  MatrixRF& operator-=(const MatrixRF& o) { return *this = *this - o; }
  MatrixRF& operator*=(const MatrixRF& o) { return *this = *this * o; }

  MatrixRF scaled(const Entry& s) const {
    MatrixRF m(n_);
    if (s.is_zero()) return m;
    if (auto c = s.constant_value()) return scaled(*c);
    for (std::size_t k = 0; k < a_.size(); ++k) m.a_[k] = a_[k] * s;
    return m;
  }

  MatrixRF scaled(const C& s) const {
    MatrixRF m(n_);
    for (std::size_t k = 0; k < a_.size(); ++k) m.a_[k] = a_[k].scaled(s);
    return m;
  }

  MatrixRF divided_by(const Entry& s) const {
    MatrixRF m(n_);
    for (std::size_t k = 0; k < a_.size(); ++k) m.a_[k] = a_[k] / s;
    return m;
  }

  Entry trace() const {
    Entry t;
    for (std::size_t k = 0; k < n_; ++k) t += (*this)(k, k);
    return t;
  }

  /// Transpose, conjugate coefficients, exchange ξ ↔ ξ̄.
  MatrixRF dagger() const {
    MatrixRF m(n_);
    for (std::size_t r = 0; r < n_; ++r) {
      for (std::size_t c = 0; c < n_; ++c) m(c, r) = (*this)(r, c).conj_swap();
    }
    return m;
  }

  MatrixRF d_xi() const {
    MatrixRF m(n_);
    for (std::size_t k = 0; k < a_.size(); ++k) m.a_[k] = a_[k].d_xi();
    return m;
  }

  MatrixRF d_xibar() const {
    MatrixRF m(n_);
    for (std::size_t k = 0; k < a_.size(); ++k) m.a_[k] = a_[k].d_xibar();
    return m;
  }

  /// Numeric value at ξ = point; throws NearPole.
  CMatrix evaluate(FloatComplex point, double pole_tolerance = kPoleTolerance) const {
    CMatrix m(n_);
    for (std::size_t r = 0; r < n_; ++r) {
      for (std::size_t c = 0; c < n_; ++c) m(r, c) = (*this)(r, c).evaluate(point, pole_tolerance);
    }
    return m;
  }

  template <Coefficient D, class F>
  MatrixRF<D> map_coefficients(F&& f) const {
    MatrixRF<D> m(n_);
    for (std::size_t r = 0; r < n_; ++r) {
      for (std::size_t c = 0; c < n_; ++c) m(r, c) = (*this)(r, c).template map_coefficients<D>(f);
    }
    return m;
  }

  std::size_t weight() const {
    std::size_t w = 0;
    for (const auto& e : a_) w += e.weight();
    return w;
  }

 private:
  void check(const MatrixRF& o) const {
    if (o.n_ != n_) {
      throw DimensionMismatch("matrix dimensions " + std::to_string(n_) + " and " + std::to_string(o.n_));
    }
  }

  std::size_t n_ = 0;
  std::vector<Entry> a_;
};

template <Coefficient C>
MatrixRF<C> commutator(const MatrixRF<C>& a, const MatrixRF<C>& b) {
  return a * b - b * a;
}

/// tr(A·B) without forming the product.
template <Coefficient C>
RatFn<C> trace_of_product(const MatrixRF<C>& a, const MatrixRF<C>& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("trace_of_product dimension mismatch");
  RatFn<C> t;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t j = 0; j < a.dim(); ++j) {
      if (a(i, j).is_zero() || b(j, i).is_zero()) continue;
      t += a(i, j) * b(j, i);
    }
  }
  return t;
}

/// (A, B) = −(1/2) tr(A·B).
template <Coefficient C>
RatFn<C> scalar_product(const MatrixRF<C>& a, const MatrixRF<C>& b) {
  return trace_of_product(a, b).scaled(C(-1) / C(2));
}

using ExactMatrix = MatrixRF<ExactComplex>;
using FloatMatrix = MatrixRF<FloatComplex>;

extern template class MatrixRF<ExactComplex>;
extern template class MatrixRF<FloatComplex>;

}  // namespace cpn

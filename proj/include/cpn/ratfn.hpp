#pragma once

#include <cmath>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cpn/bipoly.hpp"

namespace cpn {

/// Default magnitude below which an evaluated denominator counts as a pole.
inline constexpr double kPoleTolerance = 1e-12;

/// Quotient of two BiPoly.
///
/// The denominator is stored as a product of monic factors with positive
/// exponents; the scalar part always lives in the numerator. Factors come from
/// earlier divisions, so sums and products of expressions built from the same
/// inputs share factors and cancel by exact trial division. No multivariate
/// gcd is ever computed: a value is zero iff its numerator is, and a == b iff
/// a − b is zero (cross-multiplication).
template <Coefficient C>
class RatFn {
 public:
  using Coeff = C;
  using Poly = BiPoly<C>;
  using Traits = CoeffTraits<C>;

  struct Factor {
    std::shared_ptr<const Poly> poly;
    std::size_t hash = 0;
    unsigned exp = 0;

    bool same_as(const Factor& o) const {
      return poly == o.poly || (hash == o.hash && *poly == *o.poly);
    }
  };

  RatFn() = default;
  RatFn(Poly num) : num_(std::move(num)) {}  // NOLINT(google-explicit-constructor)
  RatFn(C c) : num_(std::move(c)) {}         // NOLINT(google-explicit-constructor)

  /// num/den; rejects the zero denominator immediately.
  static RatFn make(Poly num, const Poly& den) {
    if (den.is_zero()) throw ZeroDenominator("rational function with zero denominator");
    RatFn r(std::move(num));
    if (r.num_.is_zero()) return r;
    auto [scalar, factors] = split(den, {});
    r.num_ = r.num_.scaled(C(1) / scalar);
    r.den_ = std::move(factors);
    r.cancel();
    return r;
  }

  static RatFn xi() { return RatFn(Poly::xi()); }
  static RatFn xibar() { return RatFn(Poly::xibar()); }

  const Poly& numerator() const noexcept { return num_; }
  const std::vector<Factor>& denominator_factors() const noexcept { return den_; }

  /// Expanded denominator (monic product of the stored factors).
  Poly denominator() const {
    Poly d(C(1));
    for (const auto& f : den_) d = d * f.poly->pow(f.exp);
    return d;
  }

  bool is_zero() const noexcept { return num_.is_zero(); }
  bool is_polynomial() const noexcept { return den_.empty(); }
  std::optional<C> constant_value() const {
    if (!den_.empty() || !num_.is_constant()) return std::nullopt;
    return num_.constant_term();
  }

  /// Total number of stored terms (numerator plus factors); a swell gauge.
  std::size_t weight() const {
    std::size_t w = num_.size();
    for (const auto& f : den_) w += f.poly->size();
    return w;
  }

  RatFn operator-() const {
    RatFn r(*this);
    r.num_ = -r.num_;
    return r;
  }

  friend RatFn operator+(const RatFn& a, const RatFn& b) { return add(a, b, false); }
  friend RatFn operator-(const RatFn& a, const RatFn& b) { return add(a, b, true); }

  friend RatFn operator*(const RatFn& a, const RatFn& b) {
    if (a.is_zero() || b.is_zero()) return {};
    RatFn r;
    r.num_ = a.num_ * b.num_;
    r.den_ = a.den_;
    for (const auto& f : b.den_) add_factor(r.den_, f);
    if (!r.den_.empty()) r.cancel();
    return r;
  }

  friend RatFn operator/(const RatFn& a, const RatFn& b) {
    if (b.is_zero()) throw ZeroDenominator("division by the zero rational function");
    if (a.is_zero()) return {};
    std::vector<Factor> pool = a.den_;
    for (const auto& f : b.den_) pool.push_back(f);
    auto [scalar, factors] = split(b.num_, pool);
    RatFn r;
    r.num_ = (a.num_ * expand(b.den_)).scaled(C(1) / scalar);
    r.den_ = a.den_;
    for (const auto& f : factors) add_factor(r.den_, f);
    r.cancel();
    return r;
  }

  RatFn& operator+=(const RatFn& o) { return *this = *this + o; }
  RatFn& operator-=(const RatFn& o) { return *this = *this - o; }
  RatFn& operator*=(const RatFn& o) { return *this = *this * o; }
  RatFn& operator/=(const RatFn& o) { return *this = *this / o; }

  RatFn scaled(const C& s) const {
    RatFn r(*this);
    r.num_ = r.num_.scaled(s);
    if (r.num_.is_zero()) r.den_.clear();
    return r;
  }

  RatFn inverse() const { return RatFn(C(1)) / *this; }

  /// Cross-multiplied equality.
  friend bool operator==(const RatFn& a, const RatFn& b) { return (a - b).is_zero(); }

  /// ∂/∂ξ by the quotient rule.
  RatFn d_xi() const { return derivative(true); }
  /// ∂/∂ξ̄ by the quotient rule.
  RatFn d_xibar() const { return derivative(false); }

  /// Formal conjugate: conjugate coefficients and exchange ξ ↔ ξ̄.
  RatFn conj_swap() const {
    RatFn r;
    r.num_ = num_.conj_swap();
    for (const auto& f : den_) {
      Poly g = f.poly->conj_swap();
      const C lead = g.leading().second;
      if (!(lead == C(1))) {
        const C inv = C(1) / lead;
        g = g.scaled(inv);
        for (unsigned k = 0; k < f.exp; ++k) r.num_ = r.num_.scaled(inv);
      }
      add_factor(r.den_, make_factor(std::move(g), f.exp));
    }
    return r;
  }

  /// Substitutes ξ = point, ξ̄ = conj(point). Throws NearPole when the
  /// denominator magnitude drops below pole_tolerance.
  FloatComplex evaluate(FloatComplex point, double pole_tolerance = kPoleTolerance) const {
    FloatComplex den = 1.0;
    for (const auto& f : den_) {
      const FloatComplex v = f.poly->evaluate(point);
      for (unsigned k = 0; k < f.exp; ++k) den *= v;
    }
    if (std::abs(den) < pole_tolerance) throw NearPole("evaluation point is a pole");
    return num_.evaluate(point) / den;
  }

  /// Exact substitution; throws ZeroDenominator on a pole.
  C substitute(const C& xi_value, const C& xibar_value) const {
    C den(1);
    for (const auto& f : den_) {
      const C v = f.poly->substitute(xi_value, xibar_value);
      for (unsigned k = 0; k < f.exp; ++k) den = den * v;
    }
    if (Traits::is_zero(den)) throw ZeroDenominator("substitution hits a pole");
    return num_.substitute(xi_value, xibar_value) / den;
  }

  template <Coefficient D, class F>
  RatFn<D> map_coefficients(F&& f) const {
    return RatFn<D>::make(num_.template map_coefficients<D>(f), denominator().template map_coefficients<D>(f));
  }

  /// Canonical text "num/(den)" with the denominator expanded; in the exact
  /// ring both sides are scaled to coprime Gaussian-integer coefficients with
  /// the denominator's lowest term positive.
  std::string to_string() const;

  /// Splits a nonzero polynomial into scalar · Π factors, reusing pool
  /// factors wherever they divide exactly.
  static std::pair<C, std::vector<Factor>> split(Poly p, const std::vector<Factor>& pool) {
    if (p.is_zero()) throw ZeroDenominator("zero polynomial as divisor");
    std::vector<Factor> out;
    const Monomial mono = p.monomial_content();
    if (mono.xi > 0) add_factor(out, make_factor(Poly::xi(), mono.xi));
    if (mono.xibar > 0) add_factor(out, make_factor(Poly::xibar(), mono.xibar));
    if (mono.total() > 0) p = p.divided_by_monomial(mono);
    for (const auto& f : pool) {
      if (f.poly->is_constant() || f.poly->size() == 1) continue;
      while (!p.is_constant() && fits(p, *f.poly)) {
        auto q = p.divide_exact(*f.poly);
        if (!q) break;
        p = std::move(*q);
        add_factor(out, Factor{f.poly, f.hash, 1});
      }
    }
    if (p.is_constant()) return {p.constant_term(), std::move(out)};
    const C lead = p.leading().second;
    add_factor(out, make_factor(p.scaled(C(1) / lead), 1));
    return {lead, std::move(out)};
  }

 private:
  static Factor make_factor(Poly p, unsigned exp) {
    const std::size_t h = p.hash();
    return Factor{std::make_shared<const Poly>(std::move(p)), h, exp};
  }

  static void add_factor(std::vector<Factor>& den, const Factor& f) {
    for (auto& g : den) {
      if (g.same_as(f)) {
        g.exp += f.exp;
        return;
      }
    }
    den.push_back(f);
  }

  static bool fits(const Poly& p, const Poly& d) {
    return d.degree_xi() <= p.degree_xi() && d.degree_xibar() <= p.degree_xibar();
  }

  static Poly expand(const std::vector<Factor>& den) {
    Poly d(C(1));
    for (const auto& f : den) d = d * f.poly->pow(f.exp);
    return d;
  }

  static RatFn add(const RatFn& a, const RatFn& b, bool subtract) {
    if (b.is_zero()) return a;
    if (a.is_zero()) return subtract ? -b : b;
    RatFn r;
    if (same_denominator(a.den_, b.den_)) {
      r.num_ = subtract ? a.num_ - b.num_ : a.num_ + b.num_;
      r.den_ = a.den_;
    } else {
      // common multiple: maximal exponent of every factor
      r.den_ = a.den_;
      for (const auto& f : b.den_) {
        bool found = false;
        for (auto& g : r.den_) {
          if (g.same_as(f)) {
            g.exp = std::max(g.exp, f.exp);
            found = true;
            break;
          }
        }
        if (!found) r.den_.push_back(f);
      }
      const Poly na = a.num_ * cofactor(r.den_, a.den_);
      const Poly nb = b.num_ * cofactor(r.den_, b.den_);
      r.num_ = subtract ? na - nb : na + nb;
    }
    r.cancel();
    return r;
  }

  static bool same_denominator(const std::vector<Factor>& x, const std::vector<Factor>& y) {
    if (x.size() != y.size()) return false;
    for (const auto& f : x) {
      bool found = false;
      for (const auto& g : y) {
        if (f.same_as(g)) {
          if (f.exp != g.exp) return false;
          found = true;
          break;
        }
      }
      if (!found) return false;
    }
    return true;
  }

  /// Π over `full` of f^(exp_full − exp_part).
  static Poly cofactor(const std::vector<Factor>& full, const std::vector<Factor>& part) {
    Poly c(C(1));
    for (const auto& f : full) {
      unsigned have = 0;
      for (const auto& g : part) {
        if (g.same_as(f)) {
          have = g.exp;
          break;
        }
      }
      if (f.exp > have) c = c * f.poly->pow(f.exp - have);
    }
    return c;
  }

  void cancel() {
    if (num_.is_zero()) {
      den_.clear();
      return;
    }
    for (auto& f : den_) {
      while (f.exp > 0 && fits(num_, *f.poly)) {
        auto q = num_.divide_exact(*f.poly);
        if (!q) break;
        num_ = std::move(*q);
        --f.exp;
      }
    }
    std::erase_if(den_, [](const Factor& f) { return f.exp == 0; });
  }

  RatFn derivative(bool wrt_xi) const {
    auto d = [wrt_xi](const Poly& p) { return wrt_xi ? p.d_xi() : p.d_xibar(); };
    if (den_.empty()) return RatFn(d(num_));
    // n / Π d_i^e_i  ->  [n' Π d_i − n Σ e_i d_i' Π_{j≠i} d_j] / Π d_i^(e_i+1)
    Poly all(C(1));
    for (const auto& f : den_) all = all * *f.poly;
    Poly top = d(num_) * all;
    for (std::size_t i = 0; i < den_.size(); ++i) {
      Poly term = d(*den_[i].poly).scaled(C(static_cast<long>(den_[i].exp)));
      if (term.is_zero()) continue;
      for (std::size_t j = 0; j < den_.size(); ++j) {
        if (j != i) term = term * *den_[j].poly;
      }
      top = top - num_ * term;
    }
    RatFn r;
    r.num_ = std::move(top);
    r.den_ = den_;
    for (auto& f : r.den_) ++f.exp;
    r.cancel();
    return r;
  }

  Poly num_;
  std::vector<Factor> den_;
};

/// Exact-ring print normalization: returns (num, den) scaled to coprime
/// Gaussian integers with the lowest denominator term positive.
std::pair<ExactPoly, ExactPoly> normalize_for_print(const ExactPoly& num, const ExactPoly& den);

template <Coefficient C>
std::string RatFn<C>::to_string() const {
  if (den_.empty()) return num_.to_string();
  Poly n = num_;
  Poly d = denominator();
  if constexpr (Traits::exact) {
    std::tie(n, d) = normalize_for_print(n, d);
  }
  if (n.is_zero()) return "0";
  const bool unit_den = d.is_one();
  if (unit_den) return n.to_string();
  std::string top = n.size() > 1 ? "(" + n.to_string() + ")" : n.to_string();
  return top + "/(" + d.to_string() + ")";
}

using ExactRatFn = RatFn<ExactComplex>;
using FloatRatFn = RatFn<FloatComplex>;

extern template class RatFn<ExactComplex>;
extern template class RatFn<FloatComplex>;

}  // namespace cpn

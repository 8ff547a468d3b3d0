#pragma once

#include <algorithm>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "cpn/coeff.hpp"
#include "cpn/errors.hpp"

namespace cpn {

/// ξ^xi · ξ̄^xibar.
struct Monomial {
  std::uint32_t xi = 0;
  std::uint32_t xibar = 0;

  constexpr std::uint32_t total() const noexcept { return xi + xibar; }
  constexpr bool divides(const Monomial& o) const noexcept { return xi <= o.xi && xibar <= o.xibar; }
  constexpr Monomial operator*(const Monomial& o) const noexcept { return {xi + o.xi, xibar + o.xibar}; }
  /// Requires divides(o) from the other side: (*this / o).
  constexpr Monomial operator/(const Monomial& o) const noexcept { return {xi - o.xi, xibar - o.xibar}; }
  constexpr Monomial swapped() const noexcept { return {xibar, xi}; }
  friend constexpr bool operator==(const Monomial&, const Monomial&) = default;
};

/// Graded order: ascending total degree, and within one degree ξ-heavy
/// monomials first. This is the print order, and its maximum is the leading
/// monomial used by exact division (graded lex with ξ̄ > ξ).
struct MonomialOrder {
  constexpr bool operator()(const Monomial& a, const Monomial& b) const noexcept {
    const auto ta = a.total();
    const auto tb = b.total();
    return ta < tb || (ta == tb && a.xi > b.xi);
  }
};

std::string format_coefficient(const ExactComplex& c);
std::string format_coefficient(const FloatComplex& c);
/// True when the coefficient is printed as "- |c|" after a leading term.
bool prints_negative(const ExactComplex& c);
bool prints_negative(const FloatComplex& c);
std::string format_monomial(const Monomial& m);

/// Sparse polynomial in the two formal commuting variables ξ and ξ̄.
///
/// Terms are kept sorted by MonomialOrder with no stored zeros, so two
/// canonical polynomials are equal iff their term lists are equal. In the
/// floating instantiation canonicalization also drops coefficients below
/// drop_tolerance times the largest one.
template <Coefficient C>
class BiPoly {
 public:
  using Coeff = C;
  using Traits = CoeffTraits<C>;
  using Term = std::pair<Monomial, C>;

  BiPoly() = default;
  BiPoly(C c) {  // NOLINT(google-explicit-constructor)
    if (!Traits::is_zero(c)) terms_.emplace_back(Monomial{}, std::move(c));
    if constexpr (!Traits::exact) check_finite();
  }

  static BiPoly monomial(Monomial m, C c) {
    BiPoly p;
    if (!Traits::is_zero(c)) p.terms_.emplace_back(m, std::move(c));
    if constexpr (!Traits::exact) p.check_finite();
    return p;
  }
  static BiPoly xi() { return monomial({1, 0}, C(1)); }
  static BiPoly xibar() { return monomial({0, 1}, C(1)); }

  /// Builds from arbitrary (unsorted, possibly repeated) terms.
  static BiPoly from_terms(std::vector<Term> terms) {
    BiPoly p;
    p.terms_ = std::move(terms);
    p.canonicalize();
    return p;
  }

  const std::vector<Term>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept {
    return terms_.empty() || (terms_.size() == 1 && terms_.front().first == Monomial{});
  }
  bool is_one() const {
    return is_constant() && !terms_.empty() && terms_.front().second == C(1);
  }
  const Term& leading() const { return terms_.back(); }

  C constant_term() const {
    if (!terms_.empty() && terms_.front().first == Monomial{}) return terms_.front().second;
    return C(0);
  }

  /// No ξ̄ dependence.
  bool is_holomorphic() const {
    return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.first.xibar == 0; });
  }
  bool is_antiholomorphic() const {
    return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.first.xi == 0; });
  }

  std::uint32_t degree_xi() const {
    std::uint32_t d = 0;
    for (const auto& t : terms_) d = std::max(d, t.first.xi);
    return d;
  }
  std::uint32_t degree_xibar() const {
    std::uint32_t d = 0;
    for (const auto& t : terms_) d = std::max(d, t.first.xibar);
    return d;
  }

  /// Largest monomial dividing every term (zero polynomial: 1).
  Monomial monomial_content() const {
    if (terms_.empty()) return {};
    Monomial m = terms_.front().first;
    for (const auto& t : terms_) {
      m.xi = std::min(m.xi, t.first.xi);
      m.xibar = std::min(m.xibar, t.first.xibar);
    }
    return m;
  }

  /// Divides every term by m; m must divide monomial_content().
  BiPoly divided_by_monomial(Monomial m) const {
    BiPoly p;
    p.terms_.reserve(terms_.size());
    for (const auto& [mono, c] : terms_) p.terms_.emplace_back(mono / m, c);
    return p;
  }

  double max_magnitude() const {
    double m = 0.0;
    for (const auto& t : terms_) m = std::max(m, Traits::magnitude(t.second));
    return m;
  }

  BiPoly operator-() const {
    BiPoly p(*this);
    for (auto& t : p.terms_) t.second = -t.second;
    return p;
  }

  friend BiPoly operator+(const BiPoly& a, const BiPoly& b) { return merge(a, b, false); }
  friend BiPoly operator-(const BiPoly& a, const BiPoly& b) { return merge(a, b, true); }

  friend BiPoly operator*(const BiPoly& a, const BiPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (b.is_constant()) return a.scaled(b.terms_.front().second);
    if (a.is_constant()) return b.scaled(a.terms_.front().second);
    const std::uint32_t dx = a.degree_xi() + b.degree_xi();
    const std::uint32_t dy = a.degree_xibar() + b.degree_xibar();
    if ((dx + 1) * static_cast<std::size_t>(dy + 1) > 4 * a.size() * b.size()) {
      std::vector<Term> out;
      out.reserve(a.terms_.size() * b.terms_.size());
      for (const auto& [ma, ca] : a.terms_) {
        for (const auto& [mb, cb] : b.terms_) out.emplace_back(ma * mb, ca * cb);
      }
      return from_terms(std::move(out));
    }
    Dense acc(dx, dy);
    for (const auto& [ma, ca] : a.terms_) {
      for (const auto& [mb, cb] : b.terms_) acc.at(ma * mb) += ca * cb;
    }
    return acc.collect();
  }

  BiPoly& operator+=(const BiPoly& o) { return *this = *this + o; }
  BiPoly& operator-=(const BiPoly& o) { return *this = *this - o; }
  BiPoly& operator*=(const BiPoly& o) { return *this = *this * o; }

  BiPoly scaled(const C& s) const {
    if (Traits::is_zero(s)) return {};
    BiPoly p;
    p.terms_.reserve(terms_.size());
    for (const auto& [m, c] : terms_) p.terms_.emplace_back(m, c * s);
    if constexpr (!Traits::exact) p.canonicalize();
    return p;
  }

  BiPoly times_monomial(Monomial m) const {
    BiPoly p;
    p.terms_.reserve(terms_.size());
    for (const auto& [mono, c] : terms_) p.terms_.emplace_back(mono * m, c);
    return p;
  }

  BiPoly pow(unsigned e) const {
    BiPoly result(C(1));
    BiPoly base = *this;
    while (e != 0) {
      if (e & 1U) result = result * base;
      e >>= 1U;
      if (e != 0) base = base * base;
    }
    return result;
  }

  /// ∂/∂ξ with ξ̄ held constant.
  BiPoly d_xi() const {
    std::vector<Term> out;
    for (const auto& [m, c] : terms_) {
      if (m.xi == 0) continue;
      out.emplace_back(Monomial{m.xi - 1, m.xibar}, c * C(static_cast<long>(m.xi)));
    }
    return from_terms(std::move(out));
  }

  /// ∂/∂ξ̄ with ξ held constant.
  BiPoly d_xibar() const {
    std::vector<Term> out;
    for (const auto& [m, c] : terms_) {
      if (m.xibar == 0) continue;
      out.emplace_back(Monomial{m.xi, m.xibar - 1}, c * C(static_cast<long>(m.xibar)));
    }
    return from_terms(std::move(out));
  }

  /// Formal complex conjugate: conjugate coefficients and exchange ξ ↔ ξ̄.
  BiPoly conj_swap() const {
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& [m, c] : terms_) out.emplace_back(m.swapped(), Traits::conj(c));
    return from_terms(std::move(out));
  }

  /// Quotient q with q·g == *this, or nullopt when g does not divide.
  std::optional<BiPoly> divide_exact(const BiPoly& g) const {
    if (g.is_zero()) throw ZeroDenominator("polynomial division by zero");
    if (is_zero()) return BiPoly{};
    const auto& [lead_m, lead_c] = g.leading();
    if (g.size() == 1) {
      if (!lead_m.divides(monomial_content())) return std::nullopt;
      BiPoly q = divided_by_monomial(lead_m);
      if (!(lead_c == C(1))) q = q.scaled(C(1) / lead_c);
      return q;
    }
    double floor = 0.0;
    if constexpr (!Traits::exact) floor = Traits::division_tolerance * max_magnitude();
    // q·g = p forces deg(q) + deg(g) = deg(p) in each variable, so every
    // subtracted term stays inside p's degree box
    const std::uint32_t dx = degree_xi();
    const std::uint32_t dy = degree_xibar();
    const std::uint32_t gx = g.degree_xi();
    const std::uint32_t gy = g.degree_xibar();
    if (gx > dx || gy > dy) return std::nullopt;
    if ((dx + 1) * static_cast<std::size_t>(dy + 1) > 8 * size()) return divide_sparse(g, floor);
    Dense rem(dx, dy);
    for (const auto& [m, c] : terms_) rem.at(m) = c;
    std::vector<Term> quotient;
    // sweep monomials in descending order; subtraction only touches smaller ones
    for (std::uint32_t t = dx + dy + 1; t-- > 0;) {
      const std::uint32_t lo = t > dy ? t - dy : 0;
      const std::uint32_t hi = std::min(t, dx);
      for (std::uint32_t x = lo; x <= hi && lo <= hi; ++x) {
        const Monomial rm{x, t - x};
        C& rc = rem.at(rm);
        if (Traits::is_zero(rc)) continue;
        if constexpr (!Traits::exact) {
          if (Traits::magnitude(rc) <= floor) {
            rc = C(0);
            continue;
          }
        }
        if (!lead_m.divides(rm)) return std::nullopt;
        const Monomial qm = rm / lead_m;
        if (qm.xi + gx > dx || qm.xibar + gy > dy) return std::nullopt;
        C qc = rc / lead_c;
        for (const auto& [gm, gc] : g.terms_) rem.at(gm * qm) -= gc * qc;
        rc = C(0);
        quotient.emplace_back(qm, std::move(qc));
      }
    }
    std::reverse(quotient.begin(), quotient.end());
    return from_terms(std::move(quotient));
  }

  /// Substitutes ξ = point, ξ̄ = conj(point).
  FloatComplex evaluate(FloatComplex point) const {
    return evaluate_pair(point, std::conj(point));
  }

  /// Substitutes independent values for ξ and ξ̄.
  FloatComplex evaluate_pair(FloatComplex xi_value, FloatComplex xibar_value) const {
    FloatComplex sum = 0.0;
    for (const auto& [m, c] : terms_) {
      sum += Traits::to_complex(c) * ipow(xi_value, m.xi) * ipow(xibar_value, m.xibar);
    }
    return sum;
  }

  /// Exact substitution of ring elements for ξ and ξ̄.
  C substitute(const C& xi_value, const C& xibar_value) const {
    C sum(0);
    for (const auto& [m, c] : terms_) {
      C term = c;
      for (std::uint32_t k = 0; k < m.xi; ++k) term = term * xi_value;
      for (std::uint32_t k = 0; k < m.xibar; ++k) term = term * xibar_value;
      sum = sum + term;
    }
    return sum;
  }

  template <Coefficient D, class F>
  BiPoly<D> map_coefficients(F&& f) const {
    std::vector<typename BiPoly<D>::Term> out;
    out.reserve(terms_.size());
    for (const auto& [m, c] : terms_) out.emplace_back(m, f(c));
    return BiPoly<D>::from_terms(std::move(out));
  }

  std::size_t hash() const {
    std::size_t h = terms_.size();
    for (const auto& [m, c] : terms_) {
      h = h * 1000003U ^ (static_cast<std::size_t>(m.xi) << 20U) ^ m.xibar;
      if constexpr (Traits::exact) h = h * 31 + c.hash();
    }
    return h;
  }

  friend bool operator==(const BiPoly& a, const BiPoly& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t k = 0; k < a.terms_.size(); ++k) {
      if (!(a.terms_[k].first == b.terms_[k].first) || !(a.terms_[k].second == b.terms_[k].second)) {
        return false;
      }
    }
    return true;
  }

  /// Canonical text, e.g. "2 + 4*xi*xibar + 2*xi^2*xibar^2".
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      const bool neg = prints_negative(c);
      const C mag = neg ? C(-c) : c;
      if (first) {
        if (neg) os << '-';
      } else {
        os << (neg ? " - " : " + ");
      }
      first = false;
      const bool unit = mag == C(1);
      if (m == Monomial{}) {
        os << format_coefficient(mag);
      } else if (unit) {
        os << format_monomial(m);
      } else {
        os << format_coefficient(mag) << '*' << format_monomial(m);
      }
    }
    return os.str();
  }

 private:
  static FloatComplex ipow(FloatComplex base, std::uint32_t e) {
    FloatComplex r = 1.0;
    while (e != 0) {
      if (e & 1U) r *= base;
      e >>= 1U;
      if (e != 0) base *= base;
    }
    return r;
  }

  static BiPoly merge(const BiPoly& a, const BiPoly& b, bool subtract) {
    BiPoly out;
    out.terms_.reserve(a.terms_.size() + b.terms_.size());
    MonomialOrder less;
    auto ia = a.terms_.begin();
    auto ib = b.terms_.begin();
    while (ia != a.terms_.end() || ib != b.terms_.end()) {
      if (ib == b.terms_.end() || (ia != a.terms_.end() && less(ia->first, ib->first))) {
        out.terms_.push_back(*ia++);
      } else if (ia == a.terms_.end() || less(ib->first, ia->first)) {
        out.terms_.emplace_back(ib->first, subtract ? C(-ib->second) : ib->second);
        ++ib;
      } else {
        C c = subtract ? C(ia->second - ib->second) : C(ia->second + ib->second);
        if (!Traits::is_zero(c)) out.terms_.emplace_back(ia->first, std::move(c));
        ++ia;
        ++ib;
      }
    }
    if constexpr (!Traits::exact) out.drop_negligible();
    return out;
  }

  std::optional<BiPoly> divide_sparse(const BiPoly& g, double floor) const {
    const auto& [lead_m, lead_c] = g.leading();
    const std::uint32_t dx = degree_xi();
    const std::uint32_t dy = degree_xibar();
    const std::uint32_t gx = g.degree_xi();
    const std::uint32_t gy = g.degree_xibar();
    std::map<Monomial, C, MonomialOrder> rem;
    for (const auto& [m, c] : terms_) rem.emplace(m, c);
    std::vector<Term> quotient;
    while (!rem.empty()) {
      auto top = std::prev(rem.end());
      const Monomial rm = top->first;
      if (Traits::is_zero(top->second) || Traits::magnitude(top->second) <= floor) {
        rem.erase(top);
        continue;
      }
      if (!lead_m.divides(rm)) return std::nullopt;
      const Monomial qm = rm / lead_m;
      if (qm.xi + gx > dx || qm.xibar + gy > dy) return std::nullopt;
      C qc = top->second / lead_c;
      rem.erase(top);
      // the leading term cancels by construction
      for (std::size_t j = 0; j + 1 < g.terms_.size(); ++j) {
        const auto& [gm, gc] = g.terms_[j];
        rem[gm * qm] -= gc * qc;
      }
      quotient.emplace_back(qm, std::move(qc));
    }
    std::reverse(quotient.begin(), quotient.end());
    return from_terms(std::move(quotient));
  }

  /// Dense coefficient box [0, dx] × [0, dy] used by multiplication and division.
  class Dense {
   public:
    Dense(std::uint32_t dx, std::uint32_t dy) : dx_(dx), dy_(dy), cells_((dx + 1) * static_cast<std::size_t>(dy + 1), C(0)) {}
    C& at(Monomial m) { return cells_[m.xibar * static_cast<std::size_t>(dx_ + 1) + m.xi]; }

    /// Nonzero cells in MonomialOrder.
    BiPoly collect() {
      std::vector<Term> out;
      for (std::uint32_t t = 0; t <= dx_ + dy_; ++t) {
        const std::uint32_t lo = t > dy_ ? t - dy_ : 0;
        const std::uint32_t hi = std::min(t, dx_);
        for (std::uint32_t x = hi + 1; x-- > lo;) {
          C& c = at({x, t - x});
          if (!Traits::is_zero(c)) out.emplace_back(Monomial{x, t - x}, std::move(c));
        }
      }
      return from_terms(std::move(out));
    }

   private:
    std::uint32_t dx_;
    std::uint32_t dy_;
    std::vector<C> cells_;
  };

  void canonicalize() {
    const auto less = [](const Term& x, const Term& y) { return MonomialOrder{}(x.first, y.first); };
    if (!std::is_sorted(terms_.begin(), terms_.end(), less)) std::sort(terms_.begin(), terms_.end(), less);
    std::vector<Term> merged;
    merged.reserve(terms_.size());
    for (auto& t : terms_) {
      if (!merged.empty() && merged.back().first == t.first) {
        merged.back().second = merged.back().second + t.second;
      } else {
        merged.push_back(std::move(t));
      }
    }
    std::erase_if(merged, [](const Term& t) { return Traits::is_zero(t.second); });
    terms_ = std::move(merged);
    if constexpr (!Traits::exact) {
      check_finite();
      drop_negligible();
    }
  }

  void check_finite() const
    requires(!Traits::exact)
  {
    for (const auto& t : terms_) Traits::check_finite(t.second);
  }

  void drop_negligible()
    requires(!Traits::exact)
  {
    const double floor = Traits::drop_tolerance * max_magnitude();
    std::erase_if(terms_, [&](const Term& t) { return Traits::magnitude(t.second) < floor || Traits::is_zero(t.second); });
  }

  std::vector<Term> terms_;
};

using ExactPoly = BiPoly<ExactComplex>;
using FloatPoly = BiPoly<FloatComplex>;

extern template class BiPoly<ExactComplex>;
extern template class BiPoly<FloatComplex>;

}  // namespace cpn

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cpn/matrix.hpp"
#include "cpn/zero_test.hpp"

namespace cpn {

/// Holomorphic seed f = (f_0, …, f_{N−1}) of a projector tower. Components
/// are polynomials in ξ alone and at least one is nonzero.
template <Coefficient C>
class HolomorphicVector {
 public:
  using Poly = BiPoly<C>;

  explicit HolomorphicVector(std::vector<Poly> components) : components_(std::move(components)) {
    if (components_.size() < 2) throw InvalidArgument("holomorphic vector needs N >= 2 components");
    bool any = false;
    for (std::size_t k = 0; k < components_.size(); ++k) {
      if (!components_[k].is_holomorphic()) {
        throw InvalidArgument("component " + std::to_string(k) + " depends on xibar");
      }
      any = any || !components_[k].is_zero();
    }
    if (!any) throw ZeroVector("holomorphic vector is identically zero");
  }

  std::size_t dim() const noexcept { return components_.size(); }
  const std::vector<Poly>& components() const noexcept { return components_; }
  const Poly& operator[](std::size_t k) const { return components_[k]; }

 private:
  std::vector<Poly> components_;
};

/// Orthogonal rank-one projector. A certified projector has been checked to
/// be Hermitian, idempotent and of unit trace at construction time.
template <Coefficient C>
class Projector {
 public:
  using Matrix = MatrixRF<C>;

  /// Verifies P² = P, P† = P, tr P = 1; throws CertificationFailure.
  static Projector certify(Matrix m, std::ptrdiff_t index) {
    if (!vanishes(Matrix(m * m - m))) throw CertificationFailure("projector is not idempotent");
    if (!vanishes(Matrix(m.dagger() - m))) throw CertificationFailure("projector is not Hermitian");
    if (!vanishes(RatFn<C>(m.trace() - RatFn<C>(C(1))))) {
      throw CertificationFailure("projector trace is not 1");
    }
    return Projector(std::move(m), index, true);
  }

  /// Wraps an arbitrary matrix without checks (negative controls, probes).
  static Projector uncertified(Matrix m, std::ptrdiff_t index = 0) { return Projector(std::move(m), index, false); }

  const Matrix& matrix() const noexcept { return m_; }
  std::size_t dim() const noexcept { return m_.dim(); }
  /// Position in the tower counted from the holomorphic end; negative only
  /// when lower() succeeds on a non-tower input.
  std::ptrdiff_t index() const noexcept { return index_; }
  bool certified() const noexcept { return certified_; }

 private:
  Projector(Matrix m, std::ptrdiff_t index, bool certified)
      : m_(std::move(m)), index_(index), certified_(certified) {}

  Matrix m_;
  std::ptrdiff_t index_ = 0;
  bool certified_ = false;
};

/// P with its first and second Wirtinger derivatives.
template <Coefficient C>
struct Jet {
  MatrixRF<C> p, d, db, dd, ddb, dbdb;

  static Jet of(const MatrixRF<C>& m) {
    Jet j;
    j.p = m;
    j.d = m.d_xi();
    j.db = m.d_xibar();
    j.dd = j.d.d_xi();
    j.ddb = j.d.d_xibar();
    j.dbdb = j.db.d_xibar();
    return j;
  }
};

template <Coefficient C>
struct ProjectorTower {
  HolomorphicVector<C> source;
  std::vector<Projector<C>> members;

  std::size_t dim() const noexcept { return source.dim(); }
  std::size_t size() const noexcept { return members.size(); }
  const Projector<C>& operator[](std::size_t k) const { return members.at(k); }
};

namespace detail {

template <Coefficient C>
MatrixRF<C> outer_over_norm(const std::vector<BiPoly<C>>& f) {
  const std::size_t n = f.size();
  BiPoly<C> norm;
  std::vector<BiPoly<C>> fbar;
  fbar.reserve(n);
  for (const auto& c : f) {
    fbar.push_back(c.conj_swap());
    norm += fbar.back() * c;
  }
  if (norm.is_zero()) throw ZeroVector("f†·f vanishes identically");
  const RatFn<C> inv = RatFn<C>::make(BiPoly<C>(C(1)), norm);
  MatrixRF<C> p(n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) p(r, c) = RatFn<C>(f[r] * fbar[c]) * inv;
  }
  return p;
}

/// Termination test on M = ∂P·P·∂̄P (or its mirror). Exact: the trace is the
/// zero rational function. Floating: |tr M| < 1e-12 · ‖∂P‖‖∂̄P‖ at every probe.
template <Coefficient C>
bool trace_terminates(const RatFn<C>& trace, const MatrixRF<C>& d, const MatrixRF<C>& db) {
  if (trace.is_zero()) return true;
  if constexpr (CoeffTraits<C>::exact) {
    return false;
  } else {
    for (const auto& pt : kProbePoints) {
      try {
        const double scale = d.evaluate(pt).max_norm() * db.evaluate(pt).max_norm();
        if (std::abs(trace.evaluate(pt)) >= 1e-12 * std::max(scale, 1e-300)) return false;
      } catch (const NearPole&) {
      }
    }
    return true;
  }
}

template <Coefficient C>
Projector<C> step(const Projector<C>& p, bool up) {
  const auto& m = p.matrix();
  const MatrixRF<C> d = m.d_xi();
  const MatrixRF<C> db = m.d_xibar();
  const MatrixRF<C> num = up ? d * m * db : db * m * d;
  const RatFn<C> tr = num.trace();
  if (trace_terminates(tr, d, db)) throw TowerTerminated(static_cast<std::size_t>(std::max<std::ptrdiff_t>(p.index(), 0)));
  auto next = Projector<C>::certify(num.divided_by(tr), p.index() + (up ? 1 : -1));
  if (!vanishes(MatrixRF<C>(next.matrix() * m))) {
    throw CertificationFailure("creation/annihilation result is not orthogonal to its input");
  }
  return next;
}

}  // namespace detail

/// P₀ = f⊗f† / (f†·f), certified, with P₀·∂P₀ = 0 and ∂̄P₀·P₀ = 0 checked.
template <Coefficient C>
Projector<C> projector_from_vector(const HolomorphicVector<C>& f) {
  auto p = Projector<C>::certify(detail::outer_over_norm(f.components()), 0);
  const auto& m = p.matrix();
  if (!vanishes(MatrixRF<C>(m * m.d_xi())) || !vanishes(MatrixRF<C>(m.d_xibar() * m))) {
    throw CertificationFailure("P0 from a holomorphic vector must satisfy P0·dP0 = 0");
  }
  return p;
}

/// Projector onto an arbitrary (not necessarily holomorphic) direction f.
template <Coefficient C>
Projector<C> projector_from_components(const std::vector<BiPoly<C>>& f) {
  if (f.empty()) throw InvalidArgument("empty vector");
  return Projector<C>::certify(detail::outer_over_norm(f), 0);
}

/// Creation operator Π₊(P) = ∂P·P·∂̄P / tr(∂P·P·∂̄P); throws TowerTerminated.
template <Coefficient C>
Projector<C> raise(const Projector<C>& p) {
  return detail::step(p, true);
}

/// Annihilation operator Π₋(P) = ∂̄P·P·∂P / tr(∂̄P·P·∂P); throws TowerTerminated.
template <Coefficient C>
Projector<C> lower(const Projector<C>& p) {
  return detail::step(p, false);
}

/// Builds P₀ … P_{N−1} by repeated raising and verifies orthogonality,
/// completeness and termination. Throws PrematureTermination with the index of
/// the last member produced when raising fails early.
template <Coefficient C>
ProjectorTower<C> build_tower(const HolomorphicVector<C>& f) {
  const std::size_t n = f.dim();
  ProjectorTower<C> t{f, {}};
  t.members.push_back(projector_from_vector(f));
  while (t.members.size() < n) {
    try {
      t.members.push_back(raise(t.members.back()));
    } catch (const TowerTerminated& e) {
      throw PrematureTermination(t.members.size() - 1, n);
    }
  }
  try {
    (void)raise(t.members.back());
    throw CertificationFailure("tower did not terminate after N members");
  } catch (const TowerTerminated&) {
  }
  MatrixRF<C> sum(n);
  for (std::size_t j = 0; j < n; ++j) {
    sum += t.members[j].matrix();
    for (std::size_t k = j + 1; k < n; ++k) {
      if (!vanishes(MatrixRF<C>(t.members[j].matrix() * t.members[k].matrix()))) {
        throw CertificationFailure("tower members " + std::to_string(j) + " and " + std::to_string(k) +
                                   " are not orthogonal");
      }
    }
  }
  if (!vanishes(MatrixRF<C>(sum - MatrixRF<C>::identity(n)))) {
    throw CertificationFailure("tower members do not sum to the identity");
  }
  return t;
}

/// ∂[∂̄P, P] + ∂̄[∂P, P]; the zero matrix iff P solves the Euler–Lagrange
/// equations.
template <Coefficient C>
MatrixRF<C> el_residual(const MatrixRF<C>& p) {
  return commutator(p.d_xibar(), p).d_xi() + commutator(p.d_xi(), p).d_xibar();
}

template <Coefficient C>
MatrixRF<C> el_residual(const Projector<C>& p) {
  return el_residual(p.matrix());
}

/// Left side of the Euler–Lagrange equations in the homogeneous variable f:
///   (𝕀 − f⊗f†/(f†f))·[∂∂̄f − ((f†∂̄f)∂f + (f†∂f)∂̄f)/(f†f)].
/// f may depend on ξ̄.
template <Coefficient C>
std::vector<RatFn<C>> el_residual_vector(const std::vector<BiPoly<C>>& f) {
  using R = RatFn<C>;
  const std::size_t n = f.size();
  BiPoly<C> norm_poly;
  BiPoly<C> dot_db;
  BiPoly<C> dot_d;
  std::vector<BiPoly<C>> fbar(n);
  for (std::size_t k = 0; k < n; ++k) {
    fbar[k] = f[k].conj_swap();
    norm_poly += fbar[k] * f[k];
    dot_db += fbar[k] * f[k].d_xibar();
    dot_d += fbar[k] * f[k].d_xi();
  }
  if (norm_poly.is_zero()) throw ZeroVector("f†·f vanishes identically");
  const R inv = R::make(BiPoly<C>(C(1)), norm_poly);
  std::vector<R> bracket(n);
  for (std::size_t k = 0; k < n; ++k) {
    const BiPoly<C> cross = dot_db * f[k].d_xi() + dot_d * f[k].d_xibar();
    bracket[k] = R(f[k].d_xi().d_xibar()) - R(cross) * inv;
  }
  R proj;
  for (std::size_t k = 0; k < n; ++k) proj += R(fbar[k]) * bracket[k];
  proj = proj * inv;
  std::vector<R> out(n);
  for (std::size_t k = 0; k < n; ++k) out[k] = bracket[k] - R(f[k]) * proj;
  return out;
}

extern template class Projector<ExactComplex>;
extern template class Projector<FloatComplex>;
extern template ProjectorTower<ExactComplex> build_tower(const HolomorphicVector<ExactComplex>&);
extern template ProjectorTower<FloatComplex> build_tower(const HolomorphicVector<FloatComplex>&);

}  // namespace cpn

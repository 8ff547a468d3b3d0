#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "cpn/tower.hpp"

namespace cpn {

/// Immersion X_k ∈ su(N) of the k-th soliton surface.
template <Coefficient C>
struct SurfaceImmersion {
  MatrixRF<C> matrix;
  std::size_t index = 0;
  std::size_t dim = 0;
  /// k = N−1: equivalent to the k = 0 surface, only built on request.
  bool last_surface = false;
};

/// Induced metric of X_k in the coordinates (ξ, ξ̄). The diagonal components
/// g11 = g22 = 0 are verified when the data is built and not stored.
template <Coefficient C>
struct MetricData {
  RatFn<C> g12;
  RatFn<C> gamma111;
  RatFn<C> gamma222;
  std::size_t index = 0;
};

template <Coefficient C>
struct FirstForm {
  /// Coefficient of dξ dξ̄, equal to tr(∂P_k·∂̄P_k) = 2·g12.
  RatFn<C> coefficient;
  bool degenerate = false;
};

/// Matrix coefficients of the second fundamental form with the
/// Euler–Lagrange equations substituted:
///   dξ²:    −T·∂([∂P,P]/T)
///   dξdξ̄:  2[∂̄P,∂P]
///   dξ̄²:   T·∂̄([∂̄P,P]/T),        T = tr(∂P·∂̄P).
/// These equal −i times the Christoffel-corrected second derivatives of X_k.
template <Coefficient C>
struct SecondFormData {
  MatrixRF<C> coeff_dxi2;
  MatrixRF<C> coeff_dxidxibar;
  MatrixRF<C> coeff_dxibar2;
  std::size_t index = 0;
};

namespace detail {

template <Coefficient C>
C imag_unit() {
  return CoeffTraits<C>::imaginary_unit();
}

/// (2k+1)/N as a ring element.
template <Coefficient C>
C level(std::size_t k, std::size_t n) {
  return C(static_cast<long>(2 * k + 1)) / C(static_cast<long>(n));
}

template <Coefficient C>
MatrixRF<C> lower_sum(const ProjectorTower<C>& t, std::size_t k) {
  MatrixRF<C> s(t.dim());
  for (std::size_t j = 0; j < k; ++j) s += t[j].matrix();
  return s;
}

template <Coefficient C>
void check_surface_index(const ProjectorTower<C>& t, std::size_t k, bool allow_last) {
  const std::size_t n = t.dim();
  if (t.size() != n) throw InvalidArgument("surface construction needs a complete tower");
  const std::size_t top = allow_last ? n - 1 : n - 2;
  if (k > top) {
    throw IndexOutOfRange("surface index " + std::to_string(k) + " outside 0.." + std::to_string(top) +
                          (allow_last ? "" : " (k = N-1 needs the last-surface flag)"));
  }
}

}  // namespace detail

/// [X − i((2k+1)/N − 2)𝕀]·[X − i((2k+1)/N − 1)𝕀]·[X − i(2k+1)/N·𝕀].
template <Coefficient C>
MatrixRF<C> cubic_constraint_residual(const MatrixRF<C>& x, std::size_t k) {
  const std::size_t n = x.dim();
  const C i = detail::imag_unit<C>();
  const C a = detail::level<C>(k, n);
  const MatrixRF<C> id = MatrixRF<C>::identity(n);
  const MatrixRF<C> f1 = x - id.scaled(i * (a - C(2)));
  const MatrixRF<C> f2 = x - id.scaled(i * (a - C(1)));
  const MatrixRF<C> f3 = x - id.scaled(i * a);
  return f1 * f2 * f3;
}

template <Coefficient C>
MatrixRF<C> cubic_constraint_residual(const SurfaceImmersion<C>& x) {
  return cubic_constraint_residual(x.matrix, x.index);
}

/// [∂P_k, P_k] − ∂P_k − 2Σ_{j<k} ∂P_j and, with wrt_xibar, the mirror
/// [∂̄P_k, P_k] + ∂̄P_k + 2Σ_{j<k} ∂̄P_j.
template <Coefficient C>
MatrixRF<C> commutator_sum_residual(const ProjectorTower<C>& t, std::size_t k, bool wrt_xibar = false) {
  auto der = [wrt_xibar](const MatrixRF<C>& m) { return wrt_xibar ? m.d_xibar() : m.d_xi(); };
  const MatrixRF<C>& p = t[k].matrix();
  const MatrixRF<C> dp = der(p);
  const MatrixRF<C> rhs = dp + der(detail::lower_sum(t, k)).scaled(C(2));
  return wrt_xibar ? MatrixRF<C>(commutator(dp, p) + rhs) : MatrixRF<C>(commutator(dp, p) - rhs);
}

/// ∂X_k + i[∂P_k, P_k] and ∂̄X_k − i[∂̄P_k, P_k].
template <Coefficient C>
std::pair<MatrixRF<C>, MatrixRF<C>> immersion_differential_residual(const MatrixRF<C>& x, const MatrixRF<C>& p) {
  const C i = detail::imag_unit<C>();
  return {x.d_xi() + commutator(p.d_xi(), p).scaled(i), x.d_xibar() - commutator(p.d_xibar(), p).scaled(i)};
}

/// X_k = −i(P_k + 2Σ_{j<k} P_j) + i(1+2k)/N·𝕀, certified anti-Hermitian,
/// traceless, cubic-constrained and consistent with the integrand
/// ∂X = −i[∂P,P], ∂̄X = i[∂̄P,P].
template <Coefficient C>
SurfaceImmersion<C> immersion_from_tower(const ProjectorTower<C>& t, std::size_t k, bool allow_last = false) {
  detail::check_surface_index(t, k, allow_last);
  const std::size_t n = t.dim();
  const C i = detail::imag_unit<C>();
  const MatrixRF<C>& p = t[k].matrix();
  MatrixRF<C> x = MatrixRF<C>(p + detail::lower_sum(t, k).scaled(C(2))).scaled(-i) +
                  MatrixRF<C>::identity(n).scaled(i * detail::level<C>(k, n));
  if (!vanishes(MatrixRF<C>(x.dagger() + x))) throw CertificationFailure("X_k is not anti-Hermitian");
  if (!vanishes(x.trace())) throw CertificationFailure("X_k is not traceless");
  if (!vanishes(cubic_constraint_residual(x, k))) throw CertificationFailure("X_k violates the cubic constraint");
  const auto [rd, rdb] = immersion_differential_residual(x, p);
  if (!vanishes(rd) || !vanishes(rdb)) {
    throw CertificationFailure("X_k does not integrate the commutator form");
  }
  return {std::move(x), k, n, k == n - 1};
}

/// P_k = i Σ_{j=1..k} (−1)^{k−j}(X_j − X_{j−1}) + (−1)^k i X₀ + 𝕀/N from the
/// surfaces X₀ … X_k.
template <Coefficient C>
Projector<C> projector_from_surfaces(const std::vector<SurfaceImmersion<C>>& xs) {
  if (xs.empty()) throw InvalidArgument("projector_from_surfaces needs X_0");
  const std::size_t n = xs.front().dim;
  for (std::size_t j = 0; j < xs.size(); ++j) {
    if (xs[j].dim != n || xs[j].matrix.dim() != n) throw DimensionMismatch("surfaces of different dimension");
    if (xs[j].index != j) throw InvalidArgument("surface indices must be consecutive from 0");
  }
  const std::size_t k = xs.size() - 1;
  const C i = detail::imag_unit<C>();
  MatrixRF<C> acc(n);
  for (std::size_t j = 1; j <= k; ++j) {
    const C sign = (k - j) % 2 == 0 ? C(1) : C(-1);
    acc += MatrixRF<C>(xs[j].matrix - xs[j - 1].matrix).scaled(sign * i);
  }
  const C sign0 = k % 2 == 0 ? C(1) : C(-1);
  acc += xs[0].matrix.scaled(sign0 * i);
  acc += MatrixRF<C>::identity(n).scaled(C(1) / C(static_cast<long>(n)));
  return Projector<C>::certify(std::move(acc), static_cast<std::ptrdiff_t>(k));
}

/// P_k = X_k² − 2i((2k+1)/N − 1)X_k − (2k+1)/N·((2k+1)/N − 2)𝕀.
template <Coefficient C>
Projector<C> projector_from_single_surface(const SurfaceImmersion<C>& x) {
  const C i = detail::imag_unit<C>();
  const C a = detail::level<C>(x.index, x.dim);
  const MatrixRF<C>& m = x.matrix;
  MatrixRF<C> p = m * m - m.scaled(C(2) * i * (a - C(1))) -
                  MatrixRF<C>::identity(x.dim).scaled(a * (a - C(2)));
  return Projector<C>::certify(std::move(p), static_cast<std::ptrdiff_t>(x.index));
}

/// −(1/2)tr(∂X_k·∂X_k) and −(1/2)tr(∂̄X_k·∂̄X_k); both vanish along towers.
template <Coefficient C>
std::pair<RatFn<C>, RatFn<C>> metric_diagonal(const MatrixRF<C>& x) {
  const C half(C(-1) / C(2));
  const MatrixRF<C> dx = x.d_xi();
  const MatrixRF<C> dbx = x.d_xibar();
  return {trace_of_product(dx, dx).scaled(half), trace_of_product(dbx, dbx).scaled(half)};
}

/// I_k coefficient tr(∂P_k·∂̄P_k).
template <Coefficient C>
FirstForm<C> first_form(const ProjectorTower<C>& t, std::size_t k) {
  if (k >= t.size()) throw IndexOutOfRange("projector index out of range");
  const MatrixRF<C>& p = t[k].matrix();
  FirstForm<C> f{trace_of_product(p.d_xi(), p.d_xibar()), false};
  f.degenerate = vanishes(f.coefficient);
  return f;
}

/// g12 = (1/2)tr(∂P_k·∂̄P_k) with Γ¹₁₁ = ∂g12/g12, Γ²₂₂ = ∂̄g12/g12.
/// Verifies g11 = g22 = 0 through X_k; throws DegenerateMetric when g12 ≡ 0.
template <Coefficient C>
MetricData<C> metric(const ProjectorTower<C>& t, std::size_t k, bool allow_last = false) {
  detail::check_surface_index(t, k, allow_last);
  const auto x = immersion_from_tower(t, k, allow_last);
  const auto [g11, g22] = metric_diagonal(x.matrix);
  if (!vanishes(g11) || !vanishes(g22)) throw CertificationFailure("diagonal metric components do not vanish");
  const FirstForm<C> ff = first_form(t, k);
  if (ff.degenerate) throw DegenerateMetric("g12 vanishes identically for surface " + std::to_string(k));
  MetricData<C> m;
  m.index = k;
  m.g12 = ff.coefficient.scaled(C(1) / C(2));
  m.gamma111 = m.g12.d_xi() / m.g12;
  m.gamma222 = m.g12.d_xibar() / m.g12;
  return m;
}

/// g12·Γ¹₁₁ − ∂g12 and g12·Γ²₂₂ − ∂̄g12.
template <Coefficient C>
std::pair<RatFn<C>, RatFn<C>> christoffel_residual(const MetricData<C>& m) {
  return {m.g12 * m.gamma111 - m.g12.d_xi(), m.g12 * m.gamma222 - m.g12.d_xibar()};
}

template <Coefficient C>
SecondFormData<C> second_form(const ProjectorTower<C>& t, std::size_t k) {
  if (k >= t.size()) throw IndexOutOfRange("projector index out of range");
  const MatrixRF<C>& p = t[k].matrix();
  const MatrixRF<C> d = p.d_xi();
  const MatrixRF<C> db = p.d_xibar();
  const RatFn<C> tr = trace_of_product(d, db);
  if (vanishes(tr)) throw DegenerateMetric("second form undefined: g12 vanishes for surface " + std::to_string(k));
  SecondFormData<C> s;
  s.index = k;
  s.coeff_dxi2 = commutator(d, p).divided_by(tr).d_xi().scaled(tr).scaled(C(-1));
  s.coeff_dxidxibar = commutator(db, d).scaled(C(2));
  s.coeff_dxibar2 = commutator(db, p).divided_by(tr).d_xibar().scaled(tr);
  return s;
}

/// Christoffel-corrected form: ∂²X − Γ¹₁₁∂X, 2∂∂̄X, ∂̄²X − Γ²₂₂∂̄X.
template <Coefficient C>
SecondFormData<C> second_form_from_immersion(const SurfaceImmersion<C>& x, const MetricData<C>& m) {
  const MatrixRF<C> dx = x.matrix.d_xi();
  const MatrixRF<C> dbx = x.matrix.d_xibar();
  SecondFormData<C> s;
  s.index = x.index;
  s.coeff_dxi2 = dx.d_xi() - dx.scaled(m.gamma111);
  s.coeff_dxidxibar = dx.d_xibar().scaled(C(2));
  s.coeff_dxibar2 = dbx.d_xibar() - dbx.scaled(m.gamma222);
  return s;
}

}  // namespace cpn

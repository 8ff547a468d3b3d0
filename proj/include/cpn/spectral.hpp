#pragma once

#include <cstddef>
#include <string>
#include <utility>

#include "cpn/surface.hpp"

namespace cpn {

/// Spectral parameter λ ∉ {1, −1}.
template <Coefficient C>
class SpectralParam {
 public:
  explicit SpectralParam(C value) : value_(std::move(value)) {
    for (long pole : {1L, -1L}) {
      const C gap = value_ - C(pole);
      const bool hit = CoeffTraits<C>::exact ? CoeffTraits<C>::is_zero(gap) : CoeffTraits<C>::magnitude(gap) <= kPoleTolerance;
      if (hit) {
        throw ForbiddenSpectralValue("spectral parameter must differ from " + std::to_string(pole));
      }
    }
  }

  const C& value() const noexcept { return value_; }

 private:
  C value_;
};

/// Φ_k(λ) and its inverse. Fields are public so tests can perturb them.
template <Coefficient C>
struct WaveFunction {
  MatrixRF<C> phi;
  MatrixRF<C> phi_inv;
  std::size_t index = 0;
  SpectralParam<C> lambda;
};

/// Φ_k = 𝕀 + 4λ/(1−λ)²·Σ_{j<k}P_j − 2/(1−λ)·P_k
/// Φ_k⁻¹ = 𝕀 − 4λ/(1+λ)²·Σ_{j<k}P_j − 2/(1+λ)·P_k
/// The product is checked to be 𝕀.
template <Coefficient C>
WaveFunction<C> wavefunction(const ProjectorTower<C>& t, std::size_t k, const SpectralParam<C>& lambda) {
  if (k >= t.size()) throw IndexOutOfRange("wave function index out of range");
  const std::size_t n = t.dim();
  const C& l = lambda.value();
  const C one(1);
  const C four_l = C(4) * l;
  const MatrixRF<C> id = MatrixRF<C>::identity(n);
  const MatrixRF<C> lower = detail::lower_sum(t, k);
  const MatrixRF<C>& p = t[k].matrix();
  MatrixRF<C> phi = id + lower.scaled(four_l / ((one - l) * (one - l))) - p.scaled(C(2) / (one - l));
  MatrixRF<C> inv = id - lower.scaled(four_l / ((one + l) * (one + l))) - p.scaled(C(2) / (one + l));
  if (!vanishes(MatrixRF<C>(phi * inv - id))) throw CertificationFailure("wave function inverse check failed");
  return {std::move(phi), std::move(inv), k, lambda};
}

/// (∂Φ − 2/(1+λ)[∂P,P]Φ, ∂̄Φ − 2/(1−λ)[∂̄P,P]Φ) for an arbitrary Φ.
template <Coefficient C>
std::pair<MatrixRF<C>, MatrixRF<C>> lax_residual(const MatrixRF<C>& phi, const MatrixRF<C>& p,
                                                 const SpectralParam<C>& lambda) {
  const C& l = lambda.value();
  const C one(1);
  const MatrixRF<C> a = commutator(p.d_xi(), p).scaled(C(2) / (one + l));
  const MatrixRF<C> b = commutator(p.d_xibar(), p).scaled(C(2) / (one - l));
  return {phi.d_xi() - a * phi, phi.d_xibar() - b * phi};
}

template <Coefficient C>
std::pair<MatrixRF<C>, MatrixRF<C>> lax_residual(const WaveFunction<C>& w, const ProjectorTower<C>& t) {
  if (w.index >= t.size() || w.phi.dim() != t.dim()) throw DimensionMismatch("wave function does not match tower");
  return lax_residual(w.phi, t[w.index].matrix(), w.lambda);
}

/// (1/4)[2(1+λ²)𝕀 − (1−λ)²Φ − (1+λ)²Φ⁻¹], unchecked.
template <Coefficient C>
MatrixRF<C> projector_matrix_from_wavefunction(const WaveFunction<C>& w) {
  const C& l = w.lambda.value();
  const C one(1);
  const C quarter = one / C(4);
  return MatrixRF<C>::identity(w.phi.dim()).scaled(quarter * C(2) * (one + l * l)) -
         w.phi.scaled(quarter * (one - l) * (one - l)) - w.phi_inv.scaled(quarter * (one + l) * (one + l));
}

template <Coefficient C>
Projector<C> projector_from_wavefunction(const WaveFunction<C>& w) {
  return Projector<C>::certify(projector_matrix_from_wavefunction(w), static_cast<std::ptrdiff_t>(w.index));
}

namespace detail {

/// (1/16)Φ⁻²(𝕀−Φ)[(1+λ)²𝕀 − (1−λ)²Φ][(1+λ)𝕀 + s(1−λ)Φ]², s = ±1.
template <Coefficient C>
MatrixRF<C> quartic_form(const WaveFunction<C>& w, const C& s) {
  const C& l = w.lambda.value();
  const C one(1);
  const MatrixRF<C> id = MatrixRF<C>::identity(w.phi.dim());
  const MatrixRF<C> f1 = id - w.phi;
  const MatrixRF<C> f2 = id.scaled((one + l) * (one + l)) - w.phi.scaled((one - l) * (one - l));
  const MatrixRF<C> f3 = id.scaled(one + l) + w.phi.scaled(s * (one - l));
  return (w.phi_inv * w.phi_inv * f1 * f2 * f3 * f3).scaled(one / C(16));
}

}  // namespace detail

/// Factorized form of P² − P in terms of Φ:
///   (1/16)Φ⁻²(𝕀−Φ)[(1+λ)²𝕀 − (1−λ)²Φ][(1+λ)𝕀 + (1−λ)Φ]².
/// The spectrum of Φ_k is {1, ((1+λ)/(1−λ))², −(1+λ)/(1−λ)}; the squared
/// factor annihilates the last eigenvalue, which belongs to P_k.
template <Coefficient C>
MatrixRF<C> projective_factorization_residual(const WaveFunction<C>& w) {
  return detail::quartic_form(w, C(1));
}

/// The same product with [(1+λ)𝕀 − (1−λ)Φ]² as the squared factor. It does
/// not vanish on P_k's range; kept for comparison.
template <Coefficient C>
MatrixRF<C> projective_factorization_minus_variant(const WaveFunction<C>& w) {
  return detail::quartic_form(w, C(-1));
}

/// P² − P with P reconstructed from Φ, Φ⁻¹; the quantity the factorized
/// form is meant to equal.
template <Coefficient C>
MatrixRF<C> reconstructed_square_residual(const WaveFunction<C>& w) {
  const MatrixRF<C> p = projector_matrix_from_wavefunction(w);
  return p * p - p;
}

/// Degree-three relation with first-degree factors:
///   (𝕀−Φ)[(1+λ)²𝕀 − (1−λ)²Φ][(1+λ)𝕀 + (1−λ)Φ].
/// Derived by multiplying the reconstruction formula by Φ: with
/// Φ = 𝕀 + aS − bP (S = Σ_{j<k}P_j, a = 4λ/(1−λ)², b = 2/(1−λ)) the three
/// factors vanish on range(𝕀−S−P), range(S) and range(P) respectively, and
/// these ranges are mutually orthogonal and span ℂᴺ.
template <Coefficient C>
MatrixRF<C> cubic_wave_residual(const WaveFunction<C>& w) {
  const C& l = w.lambda.value();
  const C one(1);
  const MatrixRF<C> id = MatrixRF<C>::identity(w.phi.dim());
  const MatrixRF<C> f1 = id - w.phi;
  const MatrixRF<C> f2 = id.scaled((one + l) * (one + l)) - w.phi.scaled((one - l) * (one - l));
  const MatrixRF<C> f3 = id.scaled(one + l) + w.phi.scaled(one - l);
  return f1 * f2 * f3;
}

}  // namespace cpn

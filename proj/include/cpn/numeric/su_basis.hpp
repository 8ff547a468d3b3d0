#pragma once

#include <cstddef>
#include <vector>

#include "cpn/numeric/cmatrix.hpp"

namespace cpn {

/// Generalized Gell-Mann matrices λ_a (Hermitian, traceless, tr λ_aλ_b = 2δ_ab),
/// ordered: symmetric off-diagonal pairs (j<k, lexicographic), antisymmetric
/// pairs in the same order, then the N−1 diagonal ones.
std::vector<CMatrix> gell_mann_basis(std::size_t n);

/// Coordinates of X ∈ su(N) in the orthonormal basis iλ_a for the inner
/// product ⟨A, B⟩ = −½ tr(AB): x_a = −½ tr(X·iλ_a).
std::vector<double> su_coordinates(const CMatrix& x);

}  // namespace cpn

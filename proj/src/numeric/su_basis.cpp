#include "cpn/numeric/su_basis.hpp"

#include <cmath>

namespace cpn {

std::vector<CMatrix> gell_mann_basis(std::size_t n) {
  if (n < 2) throw InvalidArgument("su(N) basis needs N >= 2");
  std::vector<CMatrix> basis;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = j + 1; k < n; ++k) {
      CMatrix m(n);
      m(j, k) = m(k, j) = 1.0;
      basis.push_back(m);
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = j + 1; k < n; ++k) {
      CMatrix m(n);
      m(j, k) = std::complex<double>(0.0, -1.0);
      m(k, j) = std::complex<double>(0.0, 1.0);
      basis.push_back(m);
    }
  }
  for (std::size_t l = 1; l < n; ++l) {
    CMatrix m(n);
    const double s = std::sqrt(2.0 / static_cast<double>(l * (l + 1)));
    for (std::size_t j = 0; j < l; ++j) m(j, j) = s;
    m(l, l) = -s * static_cast<double>(l);
    basis.push_back(m);
  }
  return basis;
}

std::vector<double> su_coordinates(const CMatrix& x) {
  const std::complex<double> i(0.0, 1.0);
  std::vector<double> out;
  for (const auto& lam : gell_mann_basis(x.dim())) out.push_back((-0.5 * (x * (i * lam)).trace()).real());
  return out;
}

}  // namespace cpn

#include "cpn/numeric/backend.hpp"

#include <cmath>

namespace cpn {

HolomorphicVector<FloatComplex> veronese(std::size_t n) {
  if (n < 2) throw InvalidArgument("Veronese curve needs N >= 2");
  std::vector<BiPoly<FloatComplex>> f;
  double binom = 1.0;
  for (std::size_t j = 0; j < n; ++j) {
    f.push_back(BiPoly<FloatComplex>::monomial({static_cast<std::uint32_t>(j), 0}, FloatComplex(std::sqrt(binom))));
    binom = binom * static_cast<double>(n - 1 - j) / static_cast<double>(j + 1);
  }
  return HolomorphicVector<FloatComplex>(std::move(f));
}

template GridReport grid_residual_report(const ProjectorTower<ExactComplex>&, const GridSpec&, const GridOptions&);
template GridReport grid_residual_report(const ProjectorTower<FloatComplex>&, const GridSpec&, const GridOptions&);

}  // namespace cpn

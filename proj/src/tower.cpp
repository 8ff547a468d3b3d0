#include "cpn/tower.hpp"

namespace cpn {

template class Projector<ExactComplex>;
template class Projector<FloatComplex>;
template ProjectorTower<ExactComplex> build_tower(const HolomorphicVector<ExactComplex>&);
template ProjectorTower<FloatComplex> build_tower(const HolomorphicVector<FloatComplex>&);

}  // namespace cpn

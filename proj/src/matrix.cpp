#include "cpn/matrix.hpp"

namespace cpn {

template class MatrixRF<ExactComplex>;
template class MatrixRF<FloatComplex>;

}  // namespace cpn

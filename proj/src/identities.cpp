#include "cpn/identities.hpp"

namespace cpn {

template IdentityReport<ExactComplex> identity_suite(const Projector<ExactComplex>&, std::uint64_t);
template IdentityReport<FloatComplex> identity_suite(const Projector<FloatComplex>&, std::uint64_t);

}  // namespace cpn

#include "cpn/ratfn.hpp"

namespace cpn {

namespace {

void scale_both(ExactPoly& n, ExactPoly& d, const ExactComplex& s) {
  n = n.scaled(s);
  d = d.scaled(s);
}

}  // namespace

std::pair<ExactPoly, ExactPoly> normalize_for_print(const ExactPoly& num, const ExactPoly& den) {
  ExactPoly n = num;
  ExactPoly d = den;
  if (n.is_zero()) return {n, ExactPoly(ExactComplex(1))};

  mpz_class lcm_den = 1;
  auto visit = [](const ExactPoly& p, auto&& fn) {
    for (const auto& t : p.terms()) {
      fn(t.second.re());
      fn(t.second.im());
    }
  };
  auto lcm_step = [&lcm_den](const mpq_class& q) {
    mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), q.get_den_mpz_t());
  };
  visit(n, lcm_step);
  visit(d, lcm_step);
  scale_both(n, d, ExactComplex(mpq_class(lcm_den)));

  mpz_class gcd_num = 0;
  auto gcd_step = [&gcd_num](const mpq_class& q) {
    mpz_gcd(gcd_num.get_mpz_t(), gcd_num.get_mpz_t(), q.get_num_mpz_t());
  };
  visit(n, gcd_step);
  visit(d, gcd_step);
  if (gcd_num != 0 && gcd_num != 1) scale_both(n, d, ExactComplex(mpq_class(1, 1) / mpq_class(gcd_num)));

  const ExactComplex& low = d.terms().front().second;
  const int sign = sgn(low.re()) != 0 ? sgn(low.re()) : sgn(low.im());
  if (sign < 0) scale_both(n, d, ExactComplex(-1));
  return {n, d};
}

template class RatFn<ExactComplex>;
template class RatFn<FloatComplex>;

}  // namespace cpn

#include <cmath>
#include <complex>

#include "cpn/matrix.hpp"
#include "cpn/parser.hpp"
#include "cpn/random.hpp"
#include "cpn/zero_test.hpp"
#include "doctest.h"

using namespace cpn;
using E = ExactComplex;
using P = ExactPoly;
using R = ExactRatFn;

namespace {

P parse(const char* s) { return parse_polynomial(s); }

std::complex<double> eval(const P& p, std::complex<double> z) { return p.evaluate(z); }

}  // namespace

TEST_CASE("exact complex arithmetic") {
  const E half(1, 2);
  const E third(-1, 3);
  CHECK(half + third == E(1, 6));
  CHECK(half * third == E(-1, 6));
  CHECK(E::i() * E::i() == E(-1));
  CHECK((E(3) + E::i()).inverse() == E(mpq_class(3, 10), mpq_class(-1, 10)));
  CHECK(E(2, 4) == half);
  CHECK(E(0, 1).is_zero());
  CHECK((E(1) + E::i()).norm2() == 2);
  CHECK((E(1) + E::i()).conj() == E(1) - E::i());
  CHECK(half.to_string() == "1/2");
  CHECK(E::i().to_string() == "i");
  CHECK((-E::i()).to_string() == "-i");
}

TEST_CASE("parser accepts the documented grammar") {
  CHECK(parse("1 + xi*xibar") == P(E(1)) + P::xi() * P::xibar());
  CHECK(parse("(1+xi)^2") == parse("1 + 2*xi + xi^2"));
  CHECK(parse("3/2*i*xi") == P::monomial({1, 0}, E(3, 2) * E::i()));
  CHECK(parse("-xi^0") == P(E(-1)));
  CHECK(parse("xi - xi").is_zero());
  const auto list = parse_polynomial_list("1, xi, xi^2");
  REQUIRE(list.size() == 3);
  CHECK(list[2] == P::xi() * P::xi());
}

TEST_CASE("parser errors carry a position") {
  CHECK_THROWS_AS(parse("1 + "), ParseError);
  CHECK_THROWS_AS(parse("xi^-1"), ParseError);
  CHECK_THROWS_AS(parse("1/0"), ParseError);
  CHECK_THROWS_AS(parse("(1 + xi"), ParseError);
  try {
    (void)parse("1 + $");
    FAIL("no throw");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("1:5") != std::string::npos);
  }
}

TEST_CASE("polynomial canonical text") {
  CHECK(parse("xibar*xi + 1").to_string() == "1 + xi*xibar");
  CHECK(parse("0").to_string() == "0");
  CHECK(parse("xi^2 - 2*xi").to_string() == "-2*xi + xi^2");
  // round trip through the parser
  for (const char* s : {"1 + xi*xibar", "3/4*xi^2*xibar - i*xibar", "(1 + i)*xi"}) {
    const P p = parse(s);
    CHECK(parse(p.to_string().c_str()) == p);
  }
}

TEST_CASE("polynomial ring laws on random inputs") {
  RandomSource rng(7);
  for (int s = 0; s < 20; ++s) {
    const P a = rng.polynomial<E>(4, 3);
    const P b = rng.polynomial<E>(3, 2);
    const P c = rng.polynomial<E>(3, 2);
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a * b == b * a);
    CHECK((a * b) * c == a * (b * c));
    // product rule for both Wirtinger derivatives
    CHECK((a * b).d_xi() == a.d_xi() * b + a * b.d_xi());
    CHECK((a * b).d_xibar() == a.d_xibar() * b + a * b.d_xibar());
    if (!b.is_zero()) {
      const auto q = (a * b).divide_exact(b);
      REQUIRE(q.has_value());
      CHECK(*q == a);
    }
    // numeric evaluation is a ring homomorphism
    const std::complex<double> z(0.3, -0.7);
    CHECK(std::abs(eval(a * b, z) - eval(a, z) * eval(b, z)) < 1e-12);
  }
}

TEST_CASE("exact division rejects non-multiples") {
  const P g = parse("1 + xi*xibar");
  CHECK_FALSE(parse("1 + xi").divide_exact(g).has_value());
  CHECK_FALSE(parse("2 + xi*xibar").divide_exact(g).has_value());
  CHECK(parse("xi + xi^2*xibar").divide_exact(g).value() == P::xi());
  CHECK(parse("1 + 2*xi*xibar + xi^2*xibar^2").divide_exact(g).value() == g);
}

TEST_CASE("conj_swap is the formal conjugate") {
  const P p = parse("(1 + 2*i)*xi^2*xibar + 3");
  CHECK(p.conj_swap() == parse("(1 - 2*i)*xi*xibar^2 + 3"));
  const std::complex<double> z(0.4, 0.9);
  CHECK(std::abs(p.conj_swap().evaluate(z) - std::conj(p.evaluate(z))) < 1e-12);
}

TEST_CASE("rational functions cancel shared factors") {
  const P d = parse("1 + xi*xibar");
  const R a = R::make(P(E(1)), d);
  const R b = R::make(parse("xi*xibar"), d);
  CHECK(a + b == R(E(1)));
  CHECK((a + b).is_polynomial());
  CHECK((a * R(d)).constant_value() == E(1));
  CHECK((a / a) == R(E(1)));
  CHECK(R::make(parse("xi + xi^2*xibar"), d) == R(P::xi()));
  CHECK_THROWS_AS(R::make(P(E(1)), P()), ZeroDenominator);
  CHECK_THROWS_AS(a / R(), ZeroDenominator);
}

TEST_CASE("rational canonical text") {
  const R g = R::make(P(E(1)), parse("2*(1 + xi*xibar)^2"));
  CHECK(g.to_string() == "1/(2 + 4*xi*xibar + 2*xi^2*xibar^2)");
  CHECK(R::make(parse("xi"), parse("1 + xi*xibar")).to_string() == "xi/(1 + xi*xibar)");
  CHECK(R(E(3, 2)).to_string() == "3/2");
  CHECK(R().to_string() == "0");
}

TEST_CASE("rational derivative matches the quotient rule and numerics") {
  const R f = R::make(P(E(1)), parse("1 + xi*xibar"));
  // d/dxi (1 + xi xibar)^-1 = -xibar (1 + xi xibar)^-2
  CHECK(f.d_xi() == R::make(-P::xibar(), parse("(1 + xi*xibar)^2")));
  CHECK(f.d_xibar() == R::make(-P::xi(), parse("(1 + xi*xibar)^2")));
  RandomSource rng(11);
  for (int s = 0; s < 10; ++s) {
    const P n = rng.polynomial<E>(3, 2);
    const P dd = parse("1 + xi*xibar") * parse("2 + xi^2*xibar^2");
    const R r = R::make(n, dd);
    // exact quotient rule oracle
    const R oracle = R::make(n.d_xi() * dd - n * dd.d_xi(), dd * dd);
    CHECK(r.d_xi() == oracle);
    CHECK(r.d_xi().d_xibar() == r.d_xibar().d_xi());
  }
}

TEST_CASE("rational substitution and evaluation agree") {
  const R f = R::make(parse("xi - i*xibar"), parse("1 + xi*xibar"));
  const E v = f.substitute(E(1), E(1));
  CHECK(v == E(mpq_class(1, 2), mpq_class(-1, 2)));
  const auto z = f.evaluate({1.0, 0.0});
  CHECK(std::abs(z - std::complex<double>(0.5, -0.5)) < 1e-15);
  CHECK_THROWS_AS(R::make(P(E(1)), parse("1 - xi*xibar")).evaluate({1.0, 0.0}), NearPole);
}

TEST_CASE("matrix algebra over rational functions") {
  using M = ExactMatrix;
  const R a = R::make(P(E(1)), parse("1 + xi*xibar"));
  M m = M::from_rows({{a, R(P::xi()) * a}, {R(P::xibar()) * a, R(parse("xi*xibar")) * a}});
  CHECK(M(m * m - m).is_zero());
  CHECK(m.dagger() == m);
  CHECK(m.trace() == R(E(1)));
  CHECK(commutator(m, m).is_zero());
  CHECK(trace_of_product(m, M::identity(2)) == m.trace());
  CHECK((m.d_xi().d_xibar()) == (m.d_xibar().d_xi()));
}

TEST_CASE("float canonicalization drops debris") {
  using F = FloatComplex;
  const FloatPoly p = FloatPoly::from_terms({{{0, 0}, F(1.0)}, {{1, 0}, F(1e-15)}, {{0, 1}, F(0.5)}});
  CHECK(p.size() == 2);
  CHECK(vanishes(FloatRatFn(FloatPoly(F(1e-12)))));
  CHECK_FALSE(vanishes(FloatRatFn(FloatPoly(F(1e-9)))));
  CHECK_THROWS_AS(FloatPoly(F(std::nan(""))), NonFiniteCoefficient);
}

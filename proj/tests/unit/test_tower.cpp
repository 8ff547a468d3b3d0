#include <complex>
#include <functional>
#include <vector>

#include "cpn/identities.hpp"
#include "cpn/numeric/backend.hpp"
#include "cpn/parser.hpp"
#include "doctest.h"

using namespace cpn;
using E = ExactComplex;
using cd = std::complex<double>;
using Vec = std::vector<cd>;

namespace {

ProjectorTower<E> tower_of(const char* f) { return build_tower(HolomorphicVector<E>(parse_polynomial_list(f))); }

// Projectors onto the Gram-Schmidt orthonormalization of (f, f', f'', ...).
std::vector<CMatrix> gram_schmidt_projectors(const std::vector<Vec>& derivs) {
  std::vector<Vec> basis;
  std::vector<CMatrix> out;
  for (Vec v : derivs) {
    for (const Vec& e : basis) {
      cd dot = 0.0;
      for (std::size_t i = 0; i < v.size(); ++i) dot += std::conj(e[i]) * v[i];
      for (std::size_t i = 0; i < v.size(); ++i) v[i] -= dot * e[i];
    }
    double norm = 0.0;
    for (const cd& x : v) norm += std::norm(x);
    norm = std::sqrt(norm);
    for (cd& x : v) x /= norm;
    basis.push_back(v);
    CMatrix p(v.size());
    for (std::size_t r = 0; r < v.size(); ++r) {
      for (std::size_t c = 0; c < v.size(); ++c) p(r, c) = v[r] * std::conj(v[c]);
    }
    out.push_back(p);
  }
  return out;
}

void check_against_oracle(const ProjectorTower<E>& t, const std::function<std::vector<Vec>(cd)>& derivs) {
  for (cd z : {cd(0.3, 0.2), cd(-0.8, 0.5), cd(1.7, -1.1)}) {
    const auto oracle = gram_schmidt_projectors(derivs(z));
    REQUIRE(oracle.size() == t.size());
    for (std::size_t k = 0; k < t.size(); ++k) {
      const CMatrix diff = t[k].matrix().evaluate(z) - oracle[k];
      CHECK(diff.max_norm() < 1e-12);
    }
  }
}

}  // namespace

TEST_CASE("base case N=2 projectors") {
  const auto t = tower_of("1, xi");
  REQUIRE(t.size() == 2);
  CHECK(t[0].matrix()(0, 0).to_string() == "1/(1 + xi*xibar)");
  CHECK(t[0].matrix()(0, 1).to_string() == "xibar/(1 + xi*xibar)");
  CHECK(t[1].matrix()(0, 0).to_string() == "xi*xibar/(1 + xi*xibar)");
  CHECK(t[0].certified());
  CHECK(t[1].index() == 1);
}

TEST_CASE("towers agree with Gram-Schmidt of holomorphic derivatives") {
  check_against_oracle(tower_of("1, xi, xi^2"), [](cd z) {
    return std::vector<Vec>{{1.0, z, z * z}, {0.0, 1.0, 2.0 * z}, {0.0, 0.0, 2.0}};
  });
  check_against_oracle(tower_of("1, xi + xi^2, xi^3"), [](cd z) {
    return std::vector<Vec>{{1.0, z + z * z, z * z * z}, {0.0, 1.0 + 2.0 * z, 3.0 * z * z}, {0.0, 2.0, 6.0 * z}};
  });
  check_against_oracle(tower_of("1, i*xi, 2*xi^2, xi^3"), [](cd z) {
    const cd i(0.0, 1.0);
    return std::vector<Vec>{{1.0, i * z, 2.0 * z * z, z * z * z},
                            {0.0, i, 4.0 * z, 3.0 * z * z},
                            {0.0, 0.0, 4.0, 6.0 * z},
                            {0.0, 0.0, 0.0, 6.0}};
  });
}

TEST_CASE("tower structure: orthogonality, completeness, termination") {
  const auto t = tower_of("1, xi, xi^2, xi^3");
  ExactMatrix sum(4);
  for (std::size_t j = 0; j < t.size(); ++j) {
    sum += t[j].matrix();
    for (std::size_t k = j + 1; k < t.size(); ++k) CHECK(ExactMatrix(t[j].matrix() * t[k].matrix()).is_zero());
  }
  CHECK(sum == ExactMatrix::identity(4));
  CHECK_THROWS_AS((void)raise(t[3]), TowerTerminated);
  CHECK_THROWS_AS((void)lower(t[0]), TowerTerminated);
}

TEST_CASE("lower undoes raise") {
  const auto t = tower_of("1, xi + xi^2, xi^3");
  for (std::size_t k = 0; k + 1 < t.size(); ++k) {
    CHECK(lower(raise(t[k])).matrix() == t[k].matrix());
    CHECK(raise(t[k]).matrix() == t[k + 1].matrix());
  }
}

TEST_CASE("degenerate inputs") {
  CHECK_THROWS_AS(tower_of("1, 1"), PrematureTermination);
  try {
    (void)tower_of("1, 2, xi");
    FAIL("no throw");
  } catch (const PrematureTermination& e) {
    CHECK(e.index() == 1);
  }
  CHECK_THROWS_AS(HolomorphicVector<E>(parse_polynomial_list("0, 0")), ZeroVector);
  CHECK_THROWS_AS(HolomorphicVector<E>(parse_polynomial_list("1, xibar")), InvalidArgument);
  CHECK_THROWS_AS(HolomorphicVector<E>(parse_polynomial_list("1")), InvalidArgument);
}

TEST_CASE("Euler-Lagrange: tower members solve it, generic directions do not") {
  const auto t = tower_of("1, xi, xi^2");
  for (const auto& p : t.members) CHECK(el_residual(p).is_zero());
  const auto general = parse_polynomial_list("1, xi + xibar");
  CHECK_FALSE(el_residual(projector_from_components(general)).is_zero());
  bool any = false;
  for (const auto& r : el_residual_vector(general)) any = any || !r.is_zero();
  CHECK(any);
  // an antiholomorphic direction is harmonic too
  CHECK(el_residual(projector_from_components(parse_polynomial_list("1, xibar"))).is_zero());
}

TEST_CASE("a perturbed projector fails Euler-Lagrange") {
  const auto t = tower_of("1, xi");
  ExactMatrix p = t[0].matrix();
  p(0, 0) = p(0, 0) + ExactRatFn(E(1, 100));
  CHECK_FALSE(el_residual(p).is_zero());
  CHECK_THROWS_AS(Projector<E>::certify(p, 0), CertificationFailure);
}

TEST_CASE("identity suite holds exactly on every tower member") {
  for (const char* f : {"1, xi", "1, xi, xi^2"}) {
    const auto t = tower_of(f);
    for (const auto& p : t.members) {
      const auto rep = identity_suite(p, 12345);
      CHECK(rep.seed == 12345);
      for (const auto& c : rep.checks) {
        INFO(f << " P" << p.index() << " " << c.name);
        CHECK(c.passed());
      }
    }
  }
}

TEST_CASE("holomorphic null traces") {
  const auto t = tower_of("1, xi + xi^2, xi^3");
  for (const auto& p : t.members) {
    const auto d = p.matrix().d_xi();
    const auto db = p.matrix().d_xibar();
    CHECK(trace_of_product(d, d).is_zero());
    CHECK(trace_of_product(db, db).is_zero());
    CHECK_FALSE(trace_of_product(d, db).is_zero());
  }
}

TEST_CASE("float towers match exact towers numerically") {
  const auto f = parse_polynomial_list("1, xi + xi^2, xi^3");
  const auto te = build_tower(HolomorphicVector<E>(f));
  std::vector<FloatPoly> ff;
  for (const auto& p : f) ff.push_back(p.map_coefficients<FloatComplex>([](const E& c) { return c.to_complex(); }));
  const auto tf = build_tower(HolomorphicVector<FloatComplex>(ff));
  REQUIRE(tf.size() == te.size());
  for (cd z : {cd(0.1, 0.2), cd(-0.9, 0.4), cd(0.5, -0.5)}) {
    for (std::size_t k = 0; k < te.size(); ++k) {
      CHECK((te[k].matrix().evaluate(z) - tf[k].matrix().evaluate(z)).max_norm() < 1e-12);
    }
  }
}

TEST_CASE("Veronese float towers stay accurate far from the origin") {
  for (std::size_t n : {3, 4}) {
    const auto t = build_tower(veronese(n));
    REQUIRE(t.size() == n);
    for (cd z : {cd(0.5, 0.5), cd(3.0, -2.0), cd(-7.0, 7.0), cd(10.0, 0.0)}) {
      CMatrix sum(n);
      for (std::size_t k = 0; k < n; ++k) {
        const CMatrix p = t[k].matrix().evaluate(z);
        CHECK((p * p - p).max_norm() < 1e-10);
        sum += p;
      }
      CHECK((sum - CMatrix::identity(n)).max_norm() < 1e-10);
    }
  }
}

TEST_CASE("Veronese norm") {
  const auto f = veronese(3);
  // f(1) = (1, sqrt 2, 1), so f^dagger f = 4
  FloatComplex norm = 0.0;
  for (const auto& c : f.components()) norm += std::norm(c.evaluate({1.0, 0.0}));
  CHECK(std::abs(norm - 4.0) < 1e-14);
}

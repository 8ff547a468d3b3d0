#include <complex>

#include "cpn/parser.hpp"
#include "cpn/surface.hpp"
#include "doctest.h"

using namespace cpn;
using E = ExactComplex;
using R = ExactRatFn;
using M = ExactMatrix;
using cd = std::complex<double>;

namespace {

ProjectorTower<E> tower_of(const char* f) { return build_tower(HolomorphicVector<E>(parse_polynomial_list(f))); }

// Wirtinger derivatives of a matrix function by central differences.
template <class F>
std::pair<CMatrix, CMatrix> wirtinger(F&& f, cd z, double h = 1e-5) {
  const CMatrix dx = (f(z + h) - f(z - h)) * cd(0.5 / h);
  const CMatrix dy = (f(z + cd(0.0, h)) - f(z - cd(0.0, h))) * cd(0.5 / h);
  const cd i(0.0, 1.0);
  return {(dx - dy * i) * cd(0.5), (dx + dy * i) * cd(0.5)};
}

}  // namespace

TEST_CASE("base case metric has the closed form") {
  const auto t = tower_of("1, xi");
  const MetricData<E> m = metric(t, 0);
  // Fubini-Study: tr(dP.dbP) = (1 + |xi|^2)^-2
  const R oracle = R::make(ExactPoly(E(1)), parse_polynomial("2*(1 + xi*xibar)^2"));
  CHECK(m.g12 == oracle);
  CHECK(m.g12.to_string() == "1/(2 + 4*xi*xibar + 2*xi^2*xibar^2)");
  CHECK(std::abs(m.g12.evaluate({1.0, 0.0}) - 0.125) <= 1e-14);
  CHECK(m.g12.substitute(E(1), E(1)) == E(1, 8));
  // Gamma = d log g12 = -2 xibar / (1 + xi xibar)
  CHECK(m.gamma111 == R::make(ExactPoly(E(-2)) * ExactPoly::xibar(), parse_polynomial("1 + xi*xibar")));
  CHECK(m.gamma222 == m.gamma111.conj_swap());
}

TEST_CASE("base case immersion") {
  const auto t = tower_of("1, xi");
  const auto x = immersion_from_tower(t, 0);
  const E i = E::i();
  const M oracle = M::identity(2).scaled(i * E(1, 2)) - t[0].matrix().scaled(i);
  CHECK(x.matrix == oracle);
  CHECK(x.index == 0);
  CHECK_FALSE(x.last_surface);
  CHECK(cubic_constraint_residual(x).is_zero());
  CHECK_FALSE(cubic_constraint_residual(M(2), 0).is_zero());
}

TEST_CASE("surface index range") {
  const auto t = tower_of("1, xi, xi^2");
  CHECK_THROWS_AS(immersion_from_tower(t, 2), IndexOutOfRange);
  const auto last = immersion_from_tower(t, 2, true);
  CHECK(last.last_surface);
  // the lower sum is I - P2, so X2 = i P2 - (i/3) I
  const M oracle = t[2].matrix().scaled(E::i()) - M::identity(3).scaled(E::i() * E(1, 3));
  CHECK(last.matrix == oracle);
  CHECK(cubic_constraint_residual(last).is_zero());
}

TEST_CASE("immersions: algebraic and differential constraints") {
  const auto t = tower_of("1, xi + xi^2, xi^3");
  std::vector<SurfaceImmersion<E>> xs;
  for (std::size_t k = 0; k < 2; ++k) {
    xs.push_back(immersion_from_tower(t, k));
    const M& x = xs.back().matrix;
    CHECK(M(x.dagger() + x).is_zero());
    CHECK(x.trace().is_zero());
    CHECK(cubic_constraint_residual(x, k).is_zero());
    const auto [a, b] = immersion_differential_residual(x, t[k].matrix());
    CHECK(a.is_zero());
    CHECK(b.is_zero());
    CHECK(commutator_sum_residual(t, k).is_zero());
    CHECK(commutator_sum_residual(t, k, true).is_zero());
    CHECK(projector_from_single_surface(xs.back()).matrix() == t[k].matrix());
    CHECK(projector_from_surfaces(xs).matrix() == t[k].matrix());
    const auto [g11, g22] = metric_diagonal(x);
    CHECK(g11.is_zero());
    CHECK(g22.is_zero());
  }
}

TEST_CASE("metric and Christoffel symbols against finite differences") {
  const auto t = tower_of("1, xi, xi^2");
  for (std::size_t k = 0; k < 2; ++k) {
    const auto x = immersion_from_tower(t, k);
    const MetricData<E> m = metric(t, k);
    const auto [c1, c2] = christoffel_residual(m);
    CHECK(c1.is_zero());
    CHECK(c2.is_zero());
    for (cd z : {cd(0.3, 0.1), cd(-0.6, 0.8)}) {
      auto xf = [&](cd w) { return x.matrix.evaluate(w); };
      const auto [dx, dbx] = wirtinger(xf, z);
      // conformal metric -1/2 tr(dX.dbX)
      const cd g = -0.5 * (dx * dbx).trace();
      CHECK(std::abs(g - m.g12.evaluate(z)) < 1e-8);
      CHECK(std::abs(m.g12.evaluate(z).imag()) < 1e-14);
      const double h = 1e-5;
      const cd dlog_x = (std::log(m.g12.evaluate(z + h)) - std::log(m.g12.evaluate(z - h))) / (2 * h);
      const cd dlog_y = (std::log(m.g12.evaluate(z + cd(0, h))) - std::log(m.g12.evaluate(z - cd(0, h)))) / (2 * h);
      const cd gamma = 0.5 * (dlog_x - cd(0, 1) * dlog_y);
      CHECK(std::abs(gamma - m.gamma111.evaluate(z)) < 1e-8);
    }
  }
}

TEST_CASE("second fundamental form relations") {
  const auto t = tower_of("1, xi, xi^2");
  for (std::size_t k = 0; k < 2; ++k) {
    const auto x = immersion_from_tower(t, k);
    const auto m = metric(t, k);
    const auto s = second_form(t, k);
    const auto s2 = second_form_from_immersion(x, m);
    const E minus_i = -E::i();
    CHECK(s.coeff_dxi2 == s2.coeff_dxi2.scaled(minus_i));
    CHECK(s.coeff_dxidxibar == s2.coeff_dxidxibar.scaled(minus_i));
    CHECK(s.coeff_dxibar2 == s2.coeff_dxibar2.scaled(minus_i));
    CHECK(s.coeff_dxi2.dagger() == s.coeff_dxibar2);
    CHECK_FALSE(s.coeff_dxidxibar.is_zero());
  }
  CHECK_THROWS_AS(second_form(t, 3), IndexOutOfRange);
}

TEST_CASE("first form degenerates only on the trivial projector") {
  const auto t = tower_of("1, xi");
  CHECK_FALSE(first_form(t, 0).degenerate);
  CHECK_FALSE(first_form(t, 1).degenerate);
  ProjectorTower<E> flat{HolomorphicVector<E>(parse_polynomial_list("1, 0")), {}};
  flat.members.push_back(projector_from_vector(flat.source));
  flat.members.push_back(Projector<E>::uncertified(M::identity(2) - flat.members[0].matrix(), 1));
  CHECK(first_form(flat, 0).degenerate);
  CHECK_THROWS_AS(metric(flat, 0), DegenerateMetric);
  CHECK_THROWS_AS(second_form(flat, 0), DegenerateMetric);
}

#include <cstdlib>
#include <random>

#include "cpn/numeric/backend.hpp"
#include "cpn/numeric/su_basis.hpp"
#include "cpn/parser.hpp"
#include "doctest.h"

using namespace cpn;
using E = ExactComplex;
using R = ExactRatFn;

namespace {

std::vector<cd> random_values(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  std::vector<cd> v(n);
  for (auto& x : v) x = cd(u(rng), u(rng));
  return v;
}

}  // namespace

TEST_CASE("evaluation near a pole throws") {
  const R f = R::make(ExactPoly(E(1)), parse_polynomial("1 - xi*xibar"));
  CHECK_THROWS_AS(f.evaluate({1.0, 0.0}), NearPole);
  CHECK_THROWS_AS(f.evaluate({0.0, 1.0 + 1e-14}), NearPole);
  CHECK_NOTHROW(f.evaluate({0.5, 0.0}));
}

TEST_CASE("symbolic derivatives agree with central differences") {
  const R f = R::make(ExactPoly(E(1)), parse_polynomial("1 + xi*xibar"));
  const cd z(0.3, 0.2);
  CHECK(finite_difference_check(f, z, 1e-5) < 1e-6);
  // quadratic: central differences are exact up to rounding
  CHECK(finite_difference_check(R(parse_polynomial("xi^2")), z, 1e-5) < 1e-9);
  // truncation error shrinks with h until rounding takes over
  const double e2 = finite_difference_check(f, z, 1e-2);
  const double e3 = finite_difference_check(f, z, 1e-3);
  const double e4 = finite_difference_check(f, z, 1e-4);
  CHECK(e3 < e2);
  CHECK(e4 < e3);
  const auto t = build_tower(veronese(4));
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int s = 0; s < 10; ++s) {
    const cd p(u(rng), u(rng));
    for (const auto& m : t.members) CHECK(finite_difference_check(m.matrix()(1, 2), p, 1e-5) < 1e-6);
  }
}

TEST_CASE("SIMD kernels match the scalar reference") {
  if (!simd::cpu_has_avx2()) {
    CHECK_THROWS(simd::avx2_kernels());
    return;
  }
  const auto& s = simd::scalar_kernels();
  const auto& v = simd::avx2_kernels();
  CHECK(v.level == simd::Level::Avx2);
  std::mt19937_64 rng(5);
  for (std::size_t n : {0, 1, 2, 3, 7, 16, 33}) {
    const auto a = random_values(rng, n);
    const auto b = random_values(rng, n);
    std::vector<cd> o1(n), o2(n);
    s.cmul(a.data(), b.data(), o1.data(), n);
    v.cmul(a.data(), b.data(), o2.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(o1[i] - o2[i]) <= 1e-15 * (1.0 + std::abs(o1[i])));
    std::vector<cd> acc1 = random_values(rng, n);
    std::vector<cd> acc2 = acc1;
    const cd c(0.7, -1.3);
    s.accumulate_term(c, a.data(), b.data(), acc1.data(), n);
    v.accumulate_term(c, a.data(), b.data(), acc2.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(acc1[i] - acc2[i]) <= 1e-14 * (1.0 + std::abs(acc1[i])));
    CHECK(s.max_abs(a.data(), n) == doctest::Approx(v.max_abs(a.data(), n)).epsilon(1e-15));
  }
  // aliasing output with an input
  auto a = random_values(rng, 9);
  auto a2 = a;
  const auto b = random_values(rng, 9);
  s.cmul(a.data(), b.data(), a.data(), 9);
  v.cmul(a2.data(), b.data(), a2.data(), 9);
  for (std::size_t i = 0; i < 9; ++i) CHECK(std::abs(a[i] - a2[i]) <= 1e-14);
}

TEST_CASE("batch evaluation matches pointwise evaluation") {
  const auto t = build_tower(HolomorphicVector<E>(parse_polynomial_list("1, xi + xi^2, xi^3")));
  const GridSpec g = GridSpec::parse("-1:1:4,-0.5:0.5:3");
  for (auto level : {simd::Level::Scalar, simd::Level::Avx2}) {
    if (level == simd::Level::Avx2 && !simd::cpu_has_avx2()) continue;
    simd::select(level);
    PointBatch batch(g.points());
    BatchEvaluator<E> ev(batch);
    std::vector<bool> pole;
    const auto vals = ev.matrix(t[1].matrix(), pole);
    for (std::size_t i = 0; i < batch.size(); ++i) {
      CHECK_FALSE(pole[i]);
      CHECK((vals[i] - t[1].matrix().evaluate(batch.points()[i])).max_norm() < 1e-13);
    }
  }
  simd::select(simd::cpu_has_avx2() ? simd::Level::Avx2 : simd::Level::Scalar);
}

TEST_CASE("grid specification") {
  const GridSpec g = GridSpec::parse("-1:1:5,-2:2:3");
  CHECK(g.size() == 15);
  const auto pts = g.points();
  REQUIRE(pts.size() == 15);
  CHECK(pts[0] == cd(-1.0, -2.0));
  CHECK(pts[1] == cd(-0.5, -2.0));
  CHECK(pts[5] == cd(-1.0, 0.0));
  CHECK(pts[14] == cd(1.0, 2.0));
  CHECK(GridSpec::parse("0:0:1,0:0:1").points() == std::vector<cd>{cd(0.0, 0.0)});
  CHECK_THROWS_AS(GridSpec::parse("1:0:3,0:1:3"), InvalidArgument);
  CHECK_THROWS_AS(GridSpec::parse("0:1:0,0:1:3"), InvalidArgument);
  CHECK_THROWS_AS(GridSpec::parse("0:1:3"), InvalidArgument);
  CHECK_THROWS_AS(GridSpec::parse("a:1:3,0:1:3"), InvalidArgument);
  ::setenv("CPN_MAX_GRID", "100", 1);
  CHECK(grid_cap() == 100);
  CHECK_THROWS_AS(GridSpec::parse("0:1:11,0:1:10"), InvalidArgument);
  CHECK_NOTHROW(GridSpec::parse("0:1:10,0:1:10"));
  ::unsetenv("CPN_MAX_GRID");
  CHECK(grid_cap() == kDefaultGridCap);
}

TEST_CASE("generalized Gell-Mann basis") {
  for (std::size_t n : {2, 3, 4}) {
    const auto basis = gell_mann_basis(n);
    REQUIRE(basis.size() == n * n - 1);
    for (std::size_t a = 0; a < basis.size(); ++a) {
      CHECK((basis[a].dagger() - basis[a]).max_norm() < 1e-15);
      CHECK(std::abs(basis[a].trace()) < 1e-15);
      for (std::size_t b = 0; b < basis.size(); ++b) {
        const cd ip = (basis[a] * basis[b]).trace();
        CHECK(std::abs(ip - (a == b ? 2.0 : 0.0)) < 1e-14);
      }
    }
    // round trip of a random su(n) element
    std::mt19937_64 rng(n);
    std::normal_distribution<double> nd;
    std::vector<double> x(n * n - 1);
    CMatrix m(n);
    const cd i(0.0, 1.0);
    for (std::size_t a = 0; a < x.size(); ++a) {
      x[a] = nd(rng);
      m += basis[a] * (i * x[a]);
    }
    const auto back = su_coordinates(m);
    for (std::size_t a = 0; a < x.size(); ++a) CHECK(back[a] == doctest::Approx(x[a]).epsilon(1e-13));
  }
  // sigma_x, sigma_y, sigma_z order for N = 2
  const auto pauli = gell_mann_basis(2);
  CHECK(pauli[0](0, 1) == cd(1.0, 0.0));
  CHECK(pauli[1](0, 1) == cd(0.0, -1.0));
  CHECK(pauli[2](1, 1) == cd(-1.0, 0.0));
}

TEST_CASE("grid report on an exact tower is at machine precision") {
  const auto t = build_tower(HolomorphicVector<E>(parse_polynomial_list("1, xi")));
  const GridReport rep = grid_residual_report(t, GridSpec::parse("-1:1:5,-1:1:5"));
  CHECK(rep.points == 25);
  CHECK(rep.all_passed());
  for (const auto& r : rep.residuals) {
    INFO(r.name);
    CHECK(r.max_residual < 1e-14);
  }
}

TEST_CASE("Veronese grid reports pass") {
  for (std::size_t n : {3, 4}) {
    const auto t = build_tower(veronese(n));
    const GridReport rep = grid_residual_report(t, GridSpec::parse("-1:1:5,-1:1:5"));
    CHECK(rep.points == 25);
    for (const auto& r : rep.residuals) {
      INFO(n << " " << r.name);
      CHECK(r.max_residual < 1e-10);
    }
    // far from the origin the tower still closes
    const GridReport far = grid_residual_report(t, GridSpec::parse("-10:10:3,-10:10:3"), {.tolerance = 1e-8});
    CHECK(far.all_passed());
  }
}

TEST_CASE("grid reports flag poles instead of failing") {
  // the components share the zero xi = 1, a removable singularity the
  // rational arithmetic does not cancel
  const auto t = build_tower(HolomorphicVector<E>(parse_polynomial_list("xi - 1, xi^2 - xi")));
  const GridReport rep = grid_residual_report(t, GridSpec::parse("0:1:3,0:0:1"));
  CHECK(rep.points == 2);
  REQUIRE(rep.poles.size() == 1);
  CHECK(rep.poles[0] == cd(1.0, 0.0));
  CHECK(rep.all_passed());
  GridSpec g = GridSpec::parse("0:1:3,0:0:1");
  g.exclusions.push_back(cd(1.0, 0.0));
  const GridReport skipped = grid_residual_report(t, g);
  CHECK(skipped.points == 2);
  CHECK(skipped.poles.empty());
}

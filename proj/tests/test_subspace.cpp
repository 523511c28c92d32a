#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "mvrel/random.hpp"
#include "mvrel/subspace.hpp"
#include "test_util.hpp"

using namespace mvrel;

namespace {

Vec<double> v2(double a, double b) { return (Vec<double>(2) << a, b).finished(); }
Vec<double> v3(double a, double b, double c) { return (Vec<double>(3) << a, b, c).finished(); }
Vec<double> e(Index n, Index i) { return Vec<double>::Unit(n, i); }

Subspace<double> sp(std::vector<Vec<double>> vs, Index n) { return span<double>(vs, n); }

}  // namespace

TEST_CASE("span") {
  const auto collinear = sp({v2(1, 0), v2(2, 0)}, 2);
  CHECK(collinear.dim() == 1);
  CHECK(equal(collinear, sp({e(2, 0)}, 2)));
  CHECK(sp({}, 3).dim() == 0);
  CHECK(sp({v2(1, 1), v2(1, -1)}, 2).is_full());
  CHECK_THROWS_AS(sp({v3(1, 0, 0)}, 2), DimensionError);
}

TEST_CASE("basis is orthonormal") {
  const auto m = sp({v3(1, 2, 3), v3(0, 1, 1), v3(1, 3, 4)}, 3);
  CHECK(m.dim() == 2);
  CHECK((m.basis().adjoint() * m.basis() - Mat<double>::Identity(2, 2)).norm() < 1e-13);
}

TEST_CASE("sum") {
  CHECK(sum(sp({e(2, 0)}, 2), sp({e(2, 1)}, 2)).is_full());
  const auto m = sp({v3(1, 2, 3)}, 3);
  CHECK(equal(sum(m, Subspace<double>::zero(3)), m));
  // rank of [e1, (1,1)/√2] by an independent LU rank
  Mat<double> g(2, 2);
  g << 1, 1 / std::sqrt(2.0), 0, 1 / std::sqrt(2.0);
  REQUIRE(oracle::lu_rank(g) == 2);
  CHECK(sum(sp({e(2, 0)}, 2), sp({v2(1, 1) / std::sqrt(2.0)}, 2)).dim() == 2);
  CHECK_THROWS_AS(sum(sp({e(2, 0)}, 2), sp({e(3, 0)}, 3)), DimensionError);
}

TEST_CASE("intersect") {
  CHECK(intersect(sp({e(2, 0)}, 2), sp({e(2, 1)}, 2)).is_zero());
  const auto m = sp({v3(1, 2, 3), v3(0, 1, 0)}, 3);
  CHECK(equal(intersect(m, m), m));

  const auto a = sp({e(3, 0), e(3, 1)}, 3);
  const auto b = sp({e(3, 1), e(3, 2)}, 3);
  // brute force: kernel of [A, -B] gives the coefficient pairs of common vectors
  Mat<double> stacked(3, 4);
  stacked << a.basis(), -b.basis();
  const Mat<double> k = oracle::lu_kernel(stacked);
  REQUIRE(k.cols() == 1);
  const Vec<double> common = a.basis() * k.col(0).head(2);
  const auto got = intersect(a, b);
  CHECK(got.dim() == 1);
  CHECK(got.contains(common));
  CHECK(got.contains(e(3, 1)));
  CHECK(equal(intersect(a, b), intersect(b, a)));
}

TEST_CASE("complement and minus") {
  CHECK(complement(Subspace<double>::zero(3)).is_full());
  CHECK(complement(Subspace<double>::full(3)).is_zero());
  const auto c = complement(sp({v2(1, 1)}, 2));
  CHECK(equal(c, sp({v2(1, -1)}, 2)));

  CHECK(equal(minus(Subspace<double>::full(2), sp({e(2, 0)}, 2)), sp({e(2, 1)}, 2)));
  const auto m = sp({v3(1, 2, 3)}, 3);
  CHECK(equal(minus(m, Subspace<double>::zero(3)), m));

  // {x ∈ span{e1,e2} : <x, (1,1,0)> = 0} via an LU kernel of the constraints
  Mat<double> constraints(2, 3);
  constraints << 0, 0, 1, 1, 1, 0;
  const Mat<double> k = oracle::lu_kernel(constraints);
  REQUIRE(k.cols() == 1);
  const auto got = minus(sp({e(3, 0), e(3, 1)}, 3), sp({v3(1, 1, 0) / std::sqrt(2.0)}, 3));
  CHECK(got.dim() == 1);
  CHECK(got.contains(k.col(0)));
  CHECK(got.contains(v3(1, -1, 0)));
}

TEST_CASE("projector") {
  Mat<double> p = projector(sp({e(2, 0)}, 2));
  CHECK((p - Eigen::Vector2d(1, 0).asDiagonal().toDenseMatrix()).norm() < 1e-14);
  CHECK(projector(Subspace<double>::zero(3)).norm() == 0.0);
  Mat<double> half(2, 2);
  half << .5, .5, .5, .5;
  CHECK((projector(sp({v2(1, 1) / std::sqrt(2.0)}, 2)) - half).norm() < 1e-14);
}

TEST_CASE("compare") {
  const auto m = sp({v3(1, 2, 3)}, 3);
  CHECK(compare(m, m) == Inclusion::equal);
  CHECK(compare(Subspace<double>::zero(3), m) == Inclusion::strict_subset);
  CHECK(compare(m, Subspace<double>::zero(3)) == Inclusion::strict_superset);
  CHECK(compare(sp({e(2, 0)}, 2), sp({e(2, 1)}, 2)) == Inclusion::incomparable);
  CHECK_THROWS_AS(compare(m, Subspace<double>::zero(2)), DimensionError);
}

TEST_CASE("friedrichs cosine") {
  const auto m = sp({v3(1, 2, 3), e(3, 0)}, 3);
  CHECK(friedrichs_cosine(m, m) == 0.0);
  CHECK(friedrichs_cosine(sp({e(2, 0)}, 2), sp({e(2, 1)}, 2)) == doctest::Approx(0.0));
  for (double theta : {0.1, 0.5, 1.0, 1.4}) {
    // sup over unit x in span{e1} (x = ±e1) and y = t (cosθ, sinθ), |t| <= 1,
    // evaluated on a dense grid of t
    double best = 0;
    for (int i = -2000; i <= 2000; ++i) {
      const double t = i / 2000.0;
      best = std::max(best, std::abs(t * std::cos(theta)));
    }
    const double c = friedrichs_cosine(sp({e(2, 0)}, 2), sp({v2(std::cos(theta), std::sin(theta))}, 2));
    CHECK(c == doctest::Approx(best).epsilon(1e-12));
  }
}

TEST_CASE("random_subspace") {
  CHECK(random_subspace<double>(7, 5, 0).is_zero());
  CHECK(random_subspace<double>(7, 5, 5).is_full());
  const auto a = random_subspace<double>(42, 6, 3);
  const auto b = random_subspace<double>(42, 6, 3);
  CHECK(a.basis() == b.basis());
  CHECK_THROWS_AS(random_subspace<double>(1, 3, 4), DimensionError);
}

TEST_CASE("complex scalars") {
  using C = Complex;
  Vec<C> x(2), y(2);
  x << C(1, 0), C(0, 1);
  y << C(0, 1), C(-1, 0);  // y = i x
  const auto m = span<C>({x, y}, 2);
  CHECK(m.dim() == 1);
  const auto c = complement(m);
  CHECK(c.dim() == 1);
  CHECK(std::abs(inner<C>(Vec<C>(c.basis().col(0)), x)) < 1e-14);
}

TEST_CASE_TEMPLATE("lattice laws on random pairs", S, double, Complex) {
  Rng rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const Index n = rng.integer(1, 8);
    const auto [m, nn] = random_pair<S>(rng, n);
    // De Morgan
    CHECK(equal(complement(sum(m, nn)), intersect(complement(m), complement(nn))));
    // dimension formula
    CHECK(sum(m, nn).dim() + intersect(m, nn).dim() == m.dim() + nn.dim());
    // independent check of dim(M + N) by LU rank
    CHECK(sum(m, nn).dim() == oracle::lu_rank(linalg::hstack(m.basis(), nn.basis())));
    // projector properties
    const Vec<S> x = gaussian_vector<S>(rng, n);
    const Vec<S> px = m.projector() * x;
    CHECK(m.contains(px));
    CHECK((m.basis().adjoint() * (x - px)).norm() < 1e-12);
    // Friedrichs cosine symmetric and below 1
    const double c1 = friedrichs_cosine(m, nn);
    CHECK(c1 == doctest::Approx(friedrichs_cosine(nn, m)).epsilon(1e-9));
    CHECK(c1 < 1.0);
    CHECK(complement(complement(m)).dim() == m.dim());
    CHECK(equal(complement(complement(m)), m));
  }
}

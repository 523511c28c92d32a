#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mvrel/projection.hpp"
#include "mvrel/random.hpp"
#include "mvrel/relation.hpp"
#include "test_util.hpp"

using namespace mvrel;

namespace {

using M2 = Mat<double>;

M2 mat(Index r, Index c, std::initializer_list<double> v) {
  M2 a(r, c);
  auto it = v.begin();
  for (Index i = 0; i < r; ++i)
    for (Index j = 0; j < c; ++j) a(i, j) = *it++;
  return a;
}

Vec<double> vec(std::initializer_list<double> v) {
  Vec<double> x(static_cast<Index>(v.size()));
  Index i = 0;
  for (double d : v) x(i++) = d;
  return x;
}

Subspace<double> sp(const M2& cols) { return Subspace<double>::span(cols); }
Subspace<double> line(std::initializer_list<double> v) { return sp(M2(vec(v))); }

}  // namespace

TEST_CASE("from_generators") {
  const auto zero = LinearRelation<double>::from_generators(M2(4, 0), 2, 2);
  CHECK(zero.graph().is_zero());
  const auto d = LinearRelation<double>::from_generators(mat(4, 2, {1, 0, 0, 1, 1, 0, 0, 0}), 2, 2);
  CHECK(equal(d, graph_of(mat(2, 2, {1, 0, 0, 0}))));
  const auto p = parts(LinearRelation<double>::from_generators(M2(vec({0, 0, 0, 1})), 2, 2));
  CHECK(p.dom.is_zero());
  CHECK(equal(p.mul, line({0, 1})));
  CHECK_THROWS_AS(LinearRelation<double>::from_generators(M2(3, 1), 2, 2), DimensionError);
}

TEST_CASE("graph_of and parts") {
  const M2 a = mat(3, 2, {1, 2, 2, 4, 0, 0});
  const auto t = graph_of(a);
  CHECK(t.graph().dim() == 2);
  const auto p = parts(t);
  CHECK(p.is_operator);
  CHECK(p.dom.is_full());
  CHECK(equal(p.ran, line({1, 2, 0})));
  CHECK(equal(p.ker, line({2, -1})));
  CHECK(p.mul.is_zero());
  CHECK(parts(graph_of(M2(M2::Zero(2, 2)))).ker.is_full());
  CHECK(equal(graph_of(M2(M2::Identity(3, 3))), identity_on(Subspace<double>::full(3))));
}

TEST_CASE("parts of {0} x M and of P_{M,N}") {
  const auto m = line({1, 1, 0});
  const auto p = parts(product_of(Subspace<double>::zero(3), m));
  CHECK(p.dom.is_zero());
  CHECK(equal(p.ran, m));
  CHECK(p.ker.is_zero());
  CHECK(equal(p.mul, m));
  CHECK_FALSE(p.is_operator);

  Rng rng(5);
  for (int i = 0; i < 50; ++i) {
    const auto [mm, nn] = random_pair<double>(rng, 6);
    const auto q = parts(mv_projection(mm, nn).rel);
    CHECK(equal(q.dom, sum(mm, nn)));
    CHECK(equal(q.ran, mm));
    CHECK(equal(q.ker, nn));
    CHECK(equal(q.mul, intersect(mm, nn)));
  }
}

TEST_CASE("inverse") {
  Rng rng(11);
  const auto t = random_relation<double>(rng, 3, 4);
  CHECK(equal(inverse(inverse(t)), t));
  CHECK(equal(inverse(graph_of(mat(2, 2, {2, 0, 0, 3}))), graph_of(mat(2, 2, {0.5, 0, 0, 1.0 / 3}))));
  // generators of graph diag(1,0): (e1, e1), (e2, 0); swapped: (e1, e1), (0, e2)
  const auto swapped = LinearRelation<double>::from_generators(mat(4, 2, {1, 0, 0, 0, 1, 0, 0, 1}), 2, 2);
  const auto inv = inverse(graph_of(mat(2, 2, {1, 0, 0, 0})));
  CHECK(equal(inv, swapped));
  CHECK(equal(domain(inv), line({1, 0})));
  CHECK(equal(multivalued_part(inv), line({0, 1})));
}

TEST_CASE("adjoint") {
  Rng rng(3);
  const M2 a = gaussian_matrix<double>(rng, 3, 4);
  CHECK(equal(adjoint(graph_of(a)), graph_of(M2(a.adjoint()))));
  for (int i = 0; i < 30; ++i) {
    const auto t = random_relation<double>(rng, 3, 3);
    CHECK(equal(adjoint(adjoint(t)), t));
    const auto s = adjoint(t);
    CHECK(equal(multivalued_part(s), complement(domain(t))));
    CHECK(equal(kernel(s), complement(range(t))));
    // inner-product definition: <g, x> = <f, y> for (f, g) ∈ T, (x, y) ∈ T*
    for (Index j = 0; j < t.graph().dim(); ++j)
      for (Index k = 0; k < s.graph().dim(); ++k) {
        const Vec<double> f = t.graph().basis().col(j).head(3), g = t.graph().basis().col(j).tail(3);
        const Vec<double> x = s.graph().basis().col(k).head(3), y = s.graph().basis().col(k).tail(3);
        CHECK(std::abs(inner(g, x) - inner(f, y)) < 1e-12);
      }
    const auto [m, n] = random_pair<double>(rng, 4);
    CHECK(equal(adjoint(mv_projection(m, n).rel), mv_projection(complement(n), complement(m)).rel));
  }
}

TEST_CASE("sums") {
  Rng rng(8);
  const auto t = random_relation<double>(rng, 3, 3);
  const auto s = random_relation<double>(rng, 3, 3);
  CHECK(equal(cw_sum(t, LinearRelation<double>(3, 3, Subspace<double>::zero(6))), t));
  CHECK(equal(inverse(cw_sum(t, s)), cw_sum(inverse(t), inverse(s))));
  const auto m = line({1, 0}), n = line({1, 1});
  CHECK(equal(cw_sum(identity_on(m), zero_on(n)), mv_projection(m, n).rel));
  const auto flags = sum_flags(identity_on(m), zero_on(line({0, 1})));
  CHECK(flags.direct);
  CHECK(flags.orthogonal);
  CHECK((t.graph().is_zero() || !sum_flags(t, t).direct));

  const M2 a = gaussian_matrix<double>(rng, 3, 3), b = gaussian_matrix<double>(rng, 3, 3);
  CHECK(equal(op_sum(graph_of(a), graph_of(b)), graph_of(M2(a + b))));
  CHECK(equal(op_sum(graph_of(a), zero_on(Subspace<double>::full(3))), graph_of(a)));
  for (int i = 0; i < 50; ++i) {
    const auto u = random_relation<double>(rng, 4, 3);
    const auto v = random_relation<double>(rng, 4, 3);
    // brute force: x ∈ dom T ∩ dom S iff the stacked input blocks admit a common x
    Mat<double> st(4, u.graph().dim() + v.graph().dim());
    st << u.input_block(), -v.input_block();
    const Mat<double> k = oracle::lu_kernel(st);
    const Mat<double> common = u.input_block() * k.topRows(u.graph().dim());
    const auto dom = domain(op_sum(u, v));
    CHECK(dom.dim() == oracle::lu_rank(common));
    for (Index j = 0; j < common.cols(); ++j) CHECK(dom.contains(common.col(j)));
  }
}

TEST_CASE("compose") {
  Rng rng(21);
  const M2 a = gaussian_matrix<double>(rng, 2, 3), b = gaussian_matrix<double>(rng, 3, 4);
  CHECK(equal(compose(graph_of(a), graph_of(b)), graph_of(M2(a * b))));
  CHECK_THROWS_AS(compose(graph_of(b), graph_of(a)), DimensionError);
  for (int i = 0; i < 50; ++i) {
    const auto t = random_relation<double>(rng, 4, 3);
    const auto p = parts(t);
    CHECK(equal(compose(inverse(t), t), mv_projection(p.dom, p.ker).rel));
    CHECK(equal(compose(t, inverse(t)), mv_projection(p.ran, p.mul).rel));
    CHECK(equal(compose(t, compose(inverse(t), t)), t));
    const auto r = random_relation<double>(rng, 3, 5);
    CHECK(equal(inverse(compose(r, t)), compose(inverse(t), inverse(r))));
  }
}

TEST_CASE("distributivity") {
  Rng rng(33);
  int equal_cases = 0;
  for (int i = 0; i < 100; ++i) {
    const auto t = random_relation<double>(rng, 3, 3);
    const auto s = random_relation<double>(rng, 3, 3);
    const auto r = random_relation<double>(rng, 3, 3);
    const auto lhs = cw_sum(compose(r, t), compose(r, s));
    const auto rhs = compose(r, cw_sum(t, s));
    CHECK(is_subset(lhs, rhs));
    if (is_subset(range(t), domain(r)) || is_subset(range(s), domain(r))) {
      ++equal_cases;
      CHECK(equal(lhs, rhs));
    }
  }
  CHECK(equal_cases > 10);
  // strict witness: R = I_{span e1}, T = graph of e1 -> e1 + e2... in R^2
  const auto r = identity_on(line({1, 0}));
  const auto t = LinearRelation<double>::from_generators(M2(vec({1, 0, 1, 1})), 2, 2);
  const auto s = LinearRelation<double>::from_generators(M2(vec({1, 0, 0, -1})), 2, 2);
  CHECK(compare_rel(cw_sum(compose(r, t), compose(r, s)), compose(r, cw_sum(t, s))) ==
        Inclusion::strict_subset);
}

TEST_CASE("apply") {
  const M2 a = mat(2, 2, {1, 2, 3, 4});
  const auto ax = apply(graph_of(a), vec({1, -1}));
  REQUIRE(ax.nonempty);
  CHECK((ax.point - vec({-1, -1})).norm() < 1e-12);
  CHECK(ax.directions.is_zero());

  // (e1, y) = (m, m) + (n, 0) with m, n ∈ span e1: y free in span e1
  const auto e1 = line({1, 0});
  const auto s = apply(mv_projection(e1, e1).rel, vec({1, 0}));
  REQUIRE(s.nonempty);
  CHECK(s.point.norm() < 1e-12);
  CHECK(equal(s.directions, e1));

  CHECK_FALSE(apply(identity_on(e1), vec({0, 1})).nonempty);
  // (0,1) = m + n, m = (-1, 0), n = (1, 1)
  const auto o = apply(mv_projection(e1, line({1, 1})).rel, vec({0, 1}));
  REQUIRE(o.nonempty);
  CHECK((o.point - vec({-1, 0})).norm() < 1e-12);
}

TEST_CASE("image and restrict") {
  Rng rng(4);
  const auto t = random_relation<double>(rng, 4, 3);
  CHECK(equal(image(t, domain(t)), range(t)));
  CHECK(equal(image(t, Subspace<double>::zero(4)), multivalued_part(t)));
  const M2 a = gaussian_matrix<double>(rng, 3, 4);
  const auto m = random_subspace<double>(rng, 4, 2);
  CHECK(equal(image(graph_of(a), m), sp(M2(a * m.basis()))));
  CHECK(equal(restrict(t, domain(t)), t));
  CHECK(equal(restrict(graph_of(M2(M2::Identity(4, 4))), m), identity_on(m)));
  for (int i = 0; i < 30; ++i) {
    const auto u = random_relation<double>(rng, 4, 3);
    const auto mm = random_subspace<double>(rng, 4, rng.integer(0, 4));
    CHECK(equal(domain(restrict(u, mm)), intersect(domain(u), mm)));
  }
}

TEST_CASE("canonical") {
  const auto h = Subspace<double>::full(3);
  CHECK(equal(canonical(Canonical::identity_on, h), graph_of(M2(M2::Identity(3, 3)))));
  CHECK(equal(canonical(Canonical::zero_on, h), graph_of(M2(M2::Zero(3, 3)))));
  const auto m = line({1, 2, 3}), n = line({0, 1, 1});
  const auto p = parts(canonical(Canonical::product_of, m, &n));
  CHECK(equal(p.dom, m));
  CHECK(equal(p.ran, n));
  CHECK(equal(p.ker, m));
  CHECK(equal(p.mul, n));
  CHECK_THROWS_AS(canonical(Canonical::product_of, m), DimensionError);
}

TEST_CASE("compare_rel and the parts criterion") {
  const auto m = line({1, 0}), n = line({0, 1});
  const auto t = mv_projection(m, n).rel;
  CHECK(compare_rel(t, t) == Inclusion::equal);
  CHECK(compare_rel(identity_on(m), t) == Inclusion::strict_subset);
  Rng rng(77);
  for (int i = 0; i < 300; ++i) {
    const auto a = random_relation<double>(rng, 3, 3);
    const auto b = rng.coin(0.3) ? a : random_relation<double>(rng, 3, 3);
    CHECK(equal(a, b) == equal_by_parts(a, b));
    CHECK(equal(b, a) == equal_by_parts(b, a));
  }
}

TEST_CASE("operator_part") {
  Rng rng(9);
  const M2 a = gaussian_matrix<double>(rng, 3, 3);
  const auto op = operator_part(graph_of(a));
  CHECK((op.matrix - a).norm() < 1e-10);
  CHECK(op.norm == doctest::Approx(linalg::op_norm(a)));
  const auto z = operator_part(product_of(Subspace<double>::zero(3), line({1, 1, 1})));
  CHECK(z.norm == 0.0);
  for (double theta : {0.2, 0.7, 1.3}) {
    // explicit oblique projector onto e1 along (cos, sin): P = [[1, -cot], [0, 0]]
    const M2 p = mat(2, 2, {1, -std::cos(theta) / std::sin(theta), 0, 0});
    Eigen::JacobiSVD<M2> svd(p);
    const auto rel = mv_projection(line({1, 0}), line({std::cos(theta), std::sin(theta)})).rel;
    CHECK(operator_part(rel).norm == doctest::Approx(svd.singularValues()(0)).epsilon(1e-10));
    CHECK(operator_part(rel).norm == doctest::Approx(1 / std::sin(theta)).epsilon(1e-10));
  }
}

TEST_CASE("relation_pinv") {
  CHECK((relation_pinv(M2(M2::Identity(3, 3))) - M2::Identity(3, 3)).norm() < 1e-12);
  CHECK((relation_pinv(mat(2, 2, {2, 0, 0, 0})) - mat(2, 2, {0.5, 0, 0, 0})).norm() < 1e-12);
  Rng rng(99);
  for (int i = 0; i < 100; ++i) {
    const Index r = rng.integer(1, 6), c = rng.integer(1, 6);
    const M2 a = random_rank_matrix<double>(rng, r, c, rng.integer(0, std::min(r, c)));
    const M2 oracle_pinv = a.completeOrthogonalDecomposition().pseudoInverse();
    CHECK((relation_pinv(a) - oracle_pinv).norm() <= 1e-9 * std::max(1.0, oracle_pinv.norm()));
  }
}

TEST_CASE_TEMPLATE("relation laws", S, double, Complex) {
  Rng rng(123);
  for (int i = 0; i < 100; ++i) {
    const Index n = rng.integer(1, 5), m = rng.integer(1, 5);
    const auto t = random_relation<S>(rng, n, m);
    const auto p = parts(t);
    CHECK(t.graph().dim() == p.dom.dim() + p.mul.dim());
    CHECK(t.graph().dim() == p.ran.dim() + p.ker.dim());
    CHECK(equal(compose(t, compose(inverse(t), t)), t));
    CHECK(equal(compose(inverse(t), t), cw_sum(identity_on(p.dom), product_of(Subspace<S>::zero(n), p.ker))));
    CHECK(equal(compose(inverse(t), t), cw_sum(identity_on(p.dom), zero_on(p.ker))));
    CHECK(equal(adjoint(adjoint(t)), t));
    CHECK(equal(multivalued_part(adjoint(t)), complement(p.dom)));
    CHECK(equal(kernel(adjoint(t)), complement(p.ran)));
    CHECK(equal(closure(t), t));
  }
}

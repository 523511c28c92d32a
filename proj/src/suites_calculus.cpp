#include <algorithm>
#include <cmath>
#include <numbers>

#include "mvrel/decomposition.hpp"
#include "mvrel/projection.hpp"
#include "mvrel/wlss.hpp"
#include "suite_util.hpp"

namespace mvrel::verify {

namespace {

using detail::get_mat;
using detail::get_n;
using detail::get_rel;
using detail::get_sub;
using detail::get_vec;
using detail::make_suite;

#define SCALAR_OF(t) using S = typename decltype(t)::type

// Generators

auto gen_pair = [](auto t, Rng& rng, const VerifyConfig& c, std::uint64_t) {
  SCALAR_OF(t);
  return detail::pair_instance(random_pair<S>(rng, detail::pick_dim(rng, c)));
};

auto gen_complementary = [](auto t, Rng& rng, const VerifyConfig& c, std::uint64_t) {
  SCALAR_OF(t);
  const Index n = detail::pick_dim(rng, c);
  const Index k = rng.integer(0, n);
  return detail::pair_instance(
      SubspacePair<S>{random_subspace<S>(rng, n, k), random_subspace<S>(rng, n, n - k)});
};

auto gen_relation = [](auto t, Rng& rng, const VerifyConfig& c, std::uint64_t) {
  SCALAR_OF(t);
  const Index n = detail::pick_dim(rng, c), m = detail::pick_dim(rng, c);
  return json{{"t", io::relation_to_json(random_relation<S>(rng, n, m))}};
};

auto gen_relation_triple = [](auto t, Rng& rng, const VerifyConfig& c, std::uint64_t) {
  SCALAR_OF(t);
  const Index n = detail::pick_dim(rng, c), m = detail::pick_dim(rng, c), p = detail::pick_dim(rng, c);
  return json{{"t", io::relation_to_json(random_relation<S>(rng, n, m))},
              {"s", io::relation_to_json(random_relation<S>(rng, n, m))},
              {"r", io::relation_to_json(random_relation<S>(rng, m, p))},
              {"x", io::vector_to_json<S>(gaussian_vector<S>(rng, n))}};
};

// Checks

template <Scalar S>
void check_subspace_laws(const json& j, const VerifyConfig& c, Checker& ck) {
  const auto m = get_sub<S>(j, "m"), n = get_sub<S>(j, "nn");
  const auto mc = complement(m), nc = complement(n);
  ck.le("(M+N)^perp vs M^perp ∩ N^perp", distance(complement(sum(m, n)), intersect(mc, nc)), c.tol);
  ck.le("(M∩N)^perp vs M^perp + N^perp", distance(complement(intersect(m, n)), sum(mc, nc)), c.tol);
  ck.le("M^perp^perp vs M", distance(complement(mc), m), c.tol);
  ck.ok("dim(M+N) + dim(M∩N) = dim M + dim N",
        sum(m, n).dim() + intersect(m, n).dim() == m.dim() + n.dim());
  const Mat<S> p = m.projector();
  ck.le("P_M idempotent", linalg::op_norm(Mat<S>(p * p - p)), c.tol);
  ck.le("P_M selfadjoint", linalg::op_norm(Mat<S>(p - p.adjoint())), c.tol);
  const double cf = friedrichs_cosine(m, n);
  ck.ok("friedrichs cosine in [0, 1)", cf >= 0 && cf < 1);
  ck.le("friedrichs cosine symmetric", std::abs(cf - friedrichs_cosine(n, m)), c.tol);
}

template <Scalar S>
void check_structure(const json& j, const VerifyConfig& c, Checker& ck) {
  const auto m = get_sub<S>(j, "m"), n = get_sub<S>(j, "nn");
  const Index d = m.ambient();
  const auto e = mv_projection(m, n).rel;
  const auto p = parts(e);
  ck.le("dom E vs M + N", distance(p.dom, sum(m, n)), c.tol);
  ck.le("ran E vs M", distance(p.ran, m), c.tol);
  ck.le("ker E vs N", distance(p.ker, n), c.tol);
  ck.le("mul E vs M ∩ N", distance(p.mul, intersect(m, n)), c.tol);
  ck.le("E² vs E", distance(compose(e, e), e), c.tol);
  const auto rebuilt = cw_sum(identity_on(p.ran), product_of(p.ker, Subspace<S>::zero(d)));
  ck.le("I_ran E +̂ (ker E × {0}) vs E", distance(rebuilt, e), c.tol);
  ck.ok("classified as mv_projection", classify(e, c.tol).kind == RelationClass::mv_projection);
}

template <Scalar S>
void check_adjoint(const json& j, const VerifyConfig& c, Checker& ck) {
  const auto m = get_sub<S>(j, "m"), n = get_sub<S>(j, "nn");
  const auto e = mv_projection(m, n).rel;
  ck.le("P*_{M,N} vs P_{N^perp,M^perp}", distance(adjoint(e), mv_projection(complement(n), complement(m)).rel),
        c.tol);
  ck.le("P** vs P", distance(adjoint(adjoint(e)), e), c.tol);
}

template <Scalar S>
void check_greville(const json& j, const VerifyConfig& c, Checker& ck) {
  const auto m = get_sub<S>(j, "m"), n = get_sub<S>(j, "nn");
  ck.le("greville vs P_{M,N}", distance(greville(m, n), mv_projection(m, n).rel), c.tol);
}

template <Scalar S>
void check_ptak(const json& j, const VerifyConfig& c, Checker& ck) {
  const auto m = get_sub<S>(j, "m"), n = get_sub<S>(j, "nn");
  ck.le("ptak vs P_{M,N}", distance(ptak(m, n), mv_projection(m, n).rel), c.tol);
  ck.le("ker(I - P_N P_M) vs M ∩ N", distance(ptak_kernel(m, n), intersect(m, n)), c.tol);
}

template <Scalar S>
void check_greville_pinv(const json& j, const VerifyConfig& c, Checker& ck) {
  const auto m = get_sub<S>(j, "m"), n = get_sub<S>(j, "nn");
  const Index d = m.ambient();
  const Mat<S> g = greville_pinv(m, n);
  const Mat<S> direct = operator_part(mv_projection(m, n).rel).matrix;
  // Oblique projector from the basis [B_M B_N]: keep the M coordinates.
  const Mat<S> frame = linalg::hstack(m.basis(), n.basis());
  Mat<S> keep = Mat<S>::Zero(d, d);
  keep.topLeftCorner(m.dim(), m.dim()).setIdentity();
  const Mat<S> explicit_p = frame * keep * frame.inverse();
  const double scale = std::max(1.0, linalg::op_norm(explicit_p));
  ck.le("greville_pinv vs operator part of P_{M,N}", linalg::op_norm(Mat<S>(g - direct)) / scale, c.tol);
  ck.le("greville_pinv vs [B_M 0][B_M B_N]^-1", linalg::op_norm(Mat<S>(g - explicit_p)) / scale, c.tol);
}

template <Scalar S>
void check_inverse_system(const json& j, const VerifyConfig& c, Checker& ck) {
  const auto t = get_rel<S>(j, "t");
  const auto x = inverse(t);
  const auto p = parts(t);
  ck.le("XT vs P_{dom T, ker T}", distance(compose(x, t), mv_projection(p.dom, p.ker).rel), c.tol);
  ck.le("TX vs P_{ran T, mul T}", distance(compose(t, x), mv_projection(p.ran, p.mul).rel), c.tol);
  ck.le("XTX vs X", distance(compose(x, compose(t, x)), x), c.tol);
}

template <Scalar S>
void check_relation_laws(const json& j, const VerifyConfig& c, Checker& ck) {
  const auto t = get_rel<S>(j, "t"), s = get_rel<S>(j, "s"), r = get_rel<S>(j, "r");
  const auto p = parts(t);
  ck.le("T T⁻¹ T vs T", distance(compose(t, compose(inverse(t), t)), t), c.tol);
  ck.le("(RT)⁻¹ vs T⁻¹R⁻¹", distance(inverse(compose(r, t)), compose(inverse(t), inverse(r))), c.tol);
  ck.le("(T⁻¹)* vs (T*)⁻¹", distance(adjoint(inverse(t)), inverse(adjoint(t))), c.tol);
  ck.le("T** vs T", distance(adjoint(adjoint(t)), t), c.tol);
  const auto pa = parts(adjoint(t));
  ck.le("mul T* vs (dom T)^perp", distance(pa.mul, complement(p.dom)), c.tol);
  ck.le("ker T* vs (ran T)^perp", distance(pa.ker, complement(p.ran)), c.tol);
  ck.ok("dim T = dim dom T + dim mul T", t.graph().dim() == p.dom.dim() + p.mul.dim());
  ck.ok("dim T = dim ran T + dim ker T", t.graph().dim() == p.ran.dim() + p.ker.dim());
  ck.le("dom(T + S) vs dom T ∩ dom S", distance(domain(op_sum(t, s)), intersect(p.dom, domain(s))), c.tol);
  ck.le("mul(T + S) vs mul T + mul S", distance(multivalued_part(op_sum(t, s)), sum(p.mul, multivalued_part(s))),
        c.tol);
  const auto lhs = cw_sum(compose(r, t), compose(r, s));
  const auto rhs = compose(r, cw_sum(t, s));
  ck.ok("RT +̂ RS ⊆ R(T +̂ S)", is_subset(lhs, rhs, c.tol));
  if (is_subset(p.ran, domain(r), c.tol) || is_subset(range(s), domain(r), c.tol)) {
    ck.count("distributive_equal");
    ck.le("RT +̂ RS vs R(T +̂ S)", distance(lhs, rhs), c.tol);
  }
  ck.ok("equal and equal_by_parts agree on (T, S)", equal(t, s, c.tol) == equal_by_parts(t, s, c.tol));
  ck.ok("equal_by_parts(T, T T⁻¹ T)", equal_by_parts(t, compose(t, compose(inverse(t), t)), c.tol));
  // a point of dom T and its image set
  const Vec<S> x = p.dom.basis() * (p.dom.basis().adjoint() * get_vec<S>(j, "x"));
  const auto img = apply(t, x, c.tol);
  ck.ok("T x nonempty on dom T", img.nonempty);
  if (img.nonempty) {
    Vec<S> pt(t.dim_in() + t.dim_out());
    pt << x, img.point;
    ck.le("(x, y) ∈ T", t.graph().residual(pt) / std::max(1.0, pt.norm()), c.tol);
    ck.le("T x directions vs mul T", distance(img.directions, p.mul), c.tol);
  }
}

template <Scalar S>
void check_classify(const json& j, const VerifyConfig& c, Checker& ck) {
  const auto m = get_sub<S>(j, "m"), n = get_sub<S>(j, "nn");
  const auto e = classify(mv_projection(m, n).rel, c.tol);
  ck.ok("P_{M,N} classified as mv_projection", e.kind == RelationClass::mv_projection);
  ck.ok("P_{M,N} idempotent", e.idempotent);
  const auto nil = get_rel<S>(j, "nil");
  const auto cn = classify(nil, c.tol);
  ck.ok("graph(XY*) +̂ {0}×R classified as mv_nilpotent", cn.kind == RelationClass::mv_nilpotent);
  ck.ok("T² = dom T × mul T", cn.nilpotent_square);
  ck.ok("adjoint of nilpotent is nilpotent", classify(adjoint(nil), c.tol).kind == RelationClass::mv_nilpotent);
  // P⁻¹ is idempotent; it is a projection only when ker P ⊆ ran P
  const auto inv = classify(inverse(mv_projection(m, n).rel), c.tol);
  ck.ok("P⁻¹ idempotent", inv.idempotent);
  if (inv.kind == RelationClass::idempotent_only) ck.count("inverse_idempotent_only");
}

auto gen_classify = [](auto t, Rng& rng, const VerifyConfig& c, std::uint64_t) {
  SCALAR_OF(t);
  const Index d = detail::pick_dim(rng, c, 2);
  json out = detail::pair_instance(random_pair<S>(rng, d));
  // graph(X Y*) +̂ ({0} × R) with Y ⊥ X and R ⊥ Y
  const Index r = rng.integer(1, d / 2);
  const Index extra = rng.integer(0, d - 2 * r);
  const Mat<S> q = random_subspace<S>(rng, d, d).basis();
  const Mat<S> x = q.leftCols(r) * gaussian_matrix<S>(rng, r, r);
  const Mat<S> y = q.middleCols(r, r) * gaussian_matrix<S>(rng, r, r);
  const auto mul = Subspace<S>::span(Mat<S>(q.rightCols(extra)));
  out["nil"] = io::relation_to_json(cw_sum(graph_of(Mat<S>(x * y.adjoint())), product_of(Subspace<S>::zero(d), mul)));
  return out;
};

template <Scalar S>
void check_decomposition(const json& j, const VerifyConfig& c, Checker& ck) {
  const auto t = get_rel<S>(j, "t");
  const auto zero_part = t0(t);
  const auto leb = lebesgue(t);
  const auto weak = weak_lebesgue(t);
  ck.le("T0 vs T_reg", distance(zero_part, leb.operator_term), c.tol);
  ck.le("T0 vs T_m", distance(zero_part, weak.operator_term), c.tol);
  ck.ok("Lebesgue decomposition range-orthogonal", verify_range_orthogonal(leb, c.tol));
  ck.ok("weak Lebesgue decomposition range-orthogonal", verify_range_orthogonal(weak, c.tol));
  const auto rep = is_decomposable(t, c.tol);  // throws when the conditions disagree
  ck.ok("decomposable", rep.flag);
  ck.le("T_sing vs dom T × mul T", distance(leb.residual_term, product_of(domain(t), multivalued_part(t))), c.tol);

  const auto m = get_sub<S>(j, "m"), n = get_sub<S>(j, "nn");
  const auto common = intersect(m, n);
  const auto d = decompose_mv(m, n, c.tol);
  ck.le("operator term vs P_{M⊖(M∩N)//N}", distance(d.operator_term, mv_projection(minus(m, common), n).rel),
        c.tol);
  ck.le("operator term vs T0(P_{M,N})", distance(d.operator_term, t0(d.original)), c.tol);
  ck.le("P_{M,N} vs operator term ⊕̂ ({0} × M∩N)", distance(cw_sum(d.operator_term, d.residual_term), d.original),
        c.tol);
  ck.ok("componentwise sum orthogonal", sum_flags(d.operator_term, d.residual_term, c.tol).orthogonal);
  ck.ok("decomposability conditions (M, N)", decomposability_conditions_mv(m, n, c.tol).all());
  ck.ok("decomposability conditions (N, M)", decomposability_conditions_mv(n, m, c.tol).all());
}

auto gen_decomposition = [](auto t, Rng& rng, const VerifyConfig& c, std::uint64_t) {
  SCALAR_OF(t);
  const Index n = detail::pick_dim(rng, c), m = detail::pick_dim(rng, c);
  json out = detail::pair_instance(random_pair<S>(rng, detail::pick_dim(rng, c)));
  out["t"] = io::relation_to_json(random_relation<S>(rng, n, m));
  return out;
};

// Compression: each trial evaluates several projector families F.

auto gen_compression = [](auto t, Rng& rng, const VerifyConfig& c, std::uint64_t) {
  SCALAR_OF(t);
  const Index d = detail::pick_dim(rng, c);
  const auto pr = random_pair<S>(rng, d);
  const auto common = intersect(pr.m, pr.n);
  json fs = json::array();
  auto add = [&](const char* name, const Mat<S>& f) { fs.push_back({{"family", name}, {"f", io::matrix_to_json(f)}}); };
  add("random", random_subspace<S>(rng, d, rng.integer(0, d)).projector());
  add("common_perp", complement(common).projector());
  add("identity", Mat<S>(Mat<S>::Identity(d, d)));
  add("n_perp", complement(pr.n).projector());
  add("zero", Mat<S>(Mat<S>::Zero(d, d)));
  add("m_perp_plus_random", sum(complement(pr.m), random_subspace<S>(rng, d, rng.integer(0, 1))).projector());
  json out = detail::pair_instance(pr);
  out["projectors"] = fs;
  return out;
};

template <Scalar S>
void check_compression(const json& j, const VerifyConfig& c, Checker& ck) {
  const auto m = get_sub<S>(j, "m"), n = get_sub<S>(j, "nn");
  const Index d = get_n(j);
  for (const json& fj : j.at("projectors")) {
    const std::string family = fj.at("family");
    const Mat<S> f = get_mat<S>(fj, "f", d);
    const auto r = compress(f, m, n, c.tol);
    ck.ok("conditions vs projection (" + family + ")", r.conditions_hold == r.is_projection);
    ck.count("satisfying", r.conditions_hold ? 1 : 0);
    ck.count("violating", r.conditions_hold ? 0 : 1);
    for (auto [name, v] : {std::pair{"common_in_ker_f", r.common_in_ker_f},
                           std::pair{"domain_condition", r.domain_condition},
                           std::pair{"range_condition", r.range_condition}}) {
      ck.count(std::string(name) + "_true", v ? 1 : 0);
      ck.count(std::string(name) + "_false", v ? 0 : 1);
    }
    if (r.conditions_hold) ck.ok("F P_{M,N} = P_{F(M)//N+M∩ker F} (" + family + ")", r.matches_prediction);
  }
  // F = P, the projector onto dom E*, gives the regular part
  const auto e = mv_projection(m, n).rel;
  const Mat<S> p = domain(adjoint(e)).projector();
  const auto rp = compress(p, m, n, c.tol);
  ck.le("P P_{M,N} vs regular part", distance(rp.product, lebesgue(e).operator_term), c.tol);
}

std::vector<std::string> finalize_compression(const std::map<std::string, long>& counters, const VerifyConfig&) {
  std::vector<std::string> notes;
  auto get = [&](const char* k) {
    const auto it = counters.find(k);
    return it == counters.end() ? 0L : it->second;
  };
  if (get("satisfying") < 100)
    notes.push_back("fewer than 100 satisfying triples (" + std::to_string(get("satisfying")) + ")");
  if (get("violating") < 100)
    notes.push_back("fewer than 100 violating triples (" + std::to_string(get("violating")) + ")");
  return notes;
}

// Continuity: the first six trials (and every sixth after) use θ = 10^-k on
// the plane; the rest embed that plane by a random unitary into C^n / R^n.

auto gen_continuity = [](auto t, Rng& rng, const VerifyConfig& c, std::uint64_t index) {
  SCALAR_OF(t);
  const int k = 1 + static_cast<int>(index % 6);
  const double theta = std::pow(10.0, -k);
  const Index d = index < 6 ? 2 : std::max<Index>(2, detail::pick_dim(rng, c, 2));
  json out{{"theta", theta}, {"n", d}};
  out["embedding"] = io::matrix_to_json(Mat<S>(random_subspace<S>(rng, d, d).basis()));
  out["embedded"] = index >= 6;
  const auto pr = random_pair<S>(rng, detail::pick_dim(rng, c));
  out["m"] = io::subspace_to_json(pr.m);
  out["nn"] = io::subspace_to_json(pr.n);
  return out;
};

template <Scalar S>
void check_continuity(const json& j, const VerifyConfig& c, Checker& ck) {
  const double theta = j.at("theta");
  const Index d = get_n(j);
  Mat<S> u = Mat<S>::Identity(d, d);
  if (j.at("embedded").get<bool>()) u = get_mat<S>(j, "embedding", d);
  Vec<S> e1 = Vec<S>::Zero(d), v = Vec<S>::Zero(d);
  e1(0) = S(1);
  v(0) = S(std::cos(theta));
  v(1) = S(std::sin(theta));
  const auto m = Subspace<S>::span(Mat<S>(u * e1)), n = Subspace<S>::span(Mat<S>(u * v));
  const auto rep = continuity_report(m, n, c.tol);
  const double predicted = 1.0 / std::sin(theta);
  ck.le("|c(M,N) - cos θ|", std::abs(rep.cosine - std::cos(theta)), 1e-10);
  ck.le("relative error of ||P_{M,N}|| vs 1/sqrt(1 - cos²θ)", std::abs(rep.op_norm - predicted) / predicted, 1e-6);
  ck.ok("criterion M^perp + N^perp = (M∩N)^perp", rep.criterion_ok);

  const auto rm = get_sub<S>(j, "m"), rn = get_sub<S>(j, "nn");
  const auto r = continuity_report(rm, rn, c.tol);
  ck.ok("random pair: cosine < 1", r.cosine < 1);
  ck.ok("random pair: criterion holds", r.criterion_ok);
  if (r.trivial_intersection && !rm.is_zero())
    ck.le("random pair: relative norm error", std::abs(r.op_norm - r.predicted_norm) / r.predicted_norm, 1e-6);
}

// Weighted least squares

template <Scalar S>
AffineSet<S> normal_equation_set(const Mat<S>& w, const Mat<S>& a, const Vec<S>& b) {
  const Mat<S> g = a.adjoint() * w * a;
  const Vec<S> rhs = a.adjoint() * w * b;
  Eigen::CompleteOrthogonalDecomposition<Mat<S>> cod;
  cod.setThreshold(1e-10);
  cod.compute(g);
  const Vec<S> x = cod.solve(rhs);
  Eigen::FullPivLU<Mat<S>> lu(g);
  const double pivot = lu.maxPivot();
  if (pivot > 0) lu.setThreshold(1e-10 * std::max(1.0, pivot) / pivot);
  const Mat<S> k = lu.dimensionOfKernel() == 0 ? Mat<S>(g.cols(), 0) : Mat<S>(lu.kernel());
  return {true, x, Subspace<S>::span(k)};
}

auto gen_wlss = [](auto t, Rng& rng, const VerifyConfig& c, std::uint64_t) {
  SCALAR_OF(t);
  const Index n = detail::pick_dim(rng, c), k = detail::pick_dim(rng, c);
  const Mat<S> w = random_psd<S>(rng, n, rng.integer(0, std::max<Index>(0, n - 1)));
  const Mat<S> a = random_rank_matrix<S>(rng, n, k, rng.integer(0, std::min(n, k)));
  json probes = json::array();
  for (int i = 0; i < 10; ++i) probes.push_back(io::vector_to_json<S>(gaussian_vector<S>(rng, k)));
  return json{{"n", n},
              {"k", k},
              {"w", io::matrix_to_json(w)},
              {"a", io::matrix_to_json(a)},
              {"b", io::vector_to_json<S>(gaussian_vector<S>(rng, n))},
              {"scale", rng.uniform(0.1, 10.0)},
              {"probes", probes}};
};

template <Scalar S>
void check_wlss(const json& j, const VerifyConfig& c, Checker& ck) {
  const Index n = get_n(j), k = j.at("k").get<Index>();
  const Mat<S> w = get_mat<S>(j, "w", n), a = get_mat<S>(j, "a", k);
  const Vec<S> b = get_vec<S>(j, "b");
  const WlssProblem<S> p{w, a, b};
  const auto s = solve(p, c.tol);
  ck.ok("solution set nonempty", s.nonempty);
  if (!s.nonempty) return;
  const auto oracle = normal_equation_set(w, a, b);
  ck.ok("solution set equals the normal-equation set", equal(s, oracle, c.tol));
  ck.le("solution directions vs kernel of A*WA", distance(s.directions, oracle.directions), c.tol);
  ck.le("point is minimum-norm", std::abs(s.directions.residual(s.point) - s.point.norm()) / std::max(1.0, s.point.norm()),
        c.tol);
  ck.ok("dom P_{W, ran A} is the whole space", domain(w_projection(w, a, c.tol).rel).is_full());
  const double best = residual(w, a, s.point, b);
  const double scale = std::max(1.0, b.norm() * std::sqrt(linalg::op_norm(w)));
  ck.le("attains the closed-form optimal value", std::abs(best - optimal_value(p)) / scale, c.tol);
  for (const json& pj : j.at("probes")) {
    const Vec<S> x = io::vector_from_json<S>(pj, "probe");
    ck.ok("no probe beats the solution", best <= residual(w, a, x, b) + c.tol * scale);
    ck.count("probes");
  }
  const double sc = j.at("scale");
  ck.ok("solution set invariant under W -> cW", equal(solve(WlssProblem<S>{Mat<S>(w * S(sc)), a, b}, c.tol), s, c.tol));
}

auto gen_pinv = [](auto t, Rng& rng, const VerifyConfig& c, std::uint64_t) {
  SCALAR_OF(t);
  const Index n = detail::pick_dim(rng, c), k = detail::pick_dim(rng, c);
  return json{{"k", k}, {"a", io::matrix_to_json(random_rank_matrix<S>(rng, n, k, rng.integer(0, std::min(n, k))))}};
};

template <Scalar S>
void check_pinv(const json& j, const VerifyConfig& c, Checker& ck) {
  (void)c;
  const Mat<S> a = get_mat<S>(j, "a", j.at("k").get<Index>());
  Eigen::JacobiSVD<Mat<S>> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double cut = sv.size() > 0 ? kRankTol * sv(0) : 0.0;
  Mat<S> oracle = Mat<S>::Zero(a.cols(), a.rows());
  for (Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cut) oracle += svd.matrixV().col(i) * (svd.matrixU().col(i).adjoint() / sv(i));
  const double scale = std::max(1.0, linalg::op_norm(oracle));
  ck.le("relation pseudo-inverse vs SVD", linalg::op_norm(Mat<S>(relation_pinv(a) - oracle)) / scale, 1e-9);
}

#define CHECK_FN(name) \
  [](auto t, const json& j, const VerifyConfig& c, Checker& ck) { name<typename decltype(t)::type>(j, c, ck); }

}  // namespace

void register_calculus_suites(std::vector<Suite>& out) {
  out.push_back(make_suite("subspace_laws", "lattice laws, projectors and the Friedrichs cosine", gen_pair,
                           CHECK_FN(check_subspace_laws)));
  out.push_back(make_suite("structure", "parts of P_{M,N}, idempotency and the canonical form", gen_pair,
                           CHECK_FN(check_structure)));
  out.push_back(make_suite("adjoint", "P*_{M,N} = P_{N^perp,M^perp}", gen_pair, CHECK_FN(check_adjoint)));
  out.push_back(make_suite("greville", "Greville product form of P_{M,N}", gen_pair, CHECK_FN(check_greville)));
  out.push_back(make_suite("ptak", "Ptak form of P_{M,N} and ker(I - P_N P_M)", gen_pair, CHECK_FN(check_ptak)));
  out.push_back(make_suite("greville_pinv", "oblique projector as (P_{N^perp} P_M)^+, complementary pairs",
                           gen_complementary, CHECK_FN(check_greville_pinv)));
  out.push_back(make_suite("inverse_system", "XT, TX and XTX for X = T⁻¹", gen_relation,
                           CHECK_FN(check_inverse_system)));
  out.push_back(make_suite("relation_laws", "inverse, adjoint, sums and products of relations", gen_relation_triple,
                           CHECK_FN(check_relation_laws)));
  out.push_back(make_suite("classify", "projection, nilpotent and idempotent classification", gen_classify,
                           CHECK_FN(check_classify)));
  out.push_back(make_suite("decomposition", "T0 = T_reg = T_m and the decomposition of P_{M,N}",
                           gen_decomposition, CHECK_FN(check_decomposition)));
  Suite comp = make_suite("compression", "F P_{M,N} is a projection iff the three conditions hold",
                          gen_compression, CHECK_FN(check_compression));
  comp.finalize = finalize_compression;
  out.push_back(std::move(comp));
  out.push_back(make_suite("continuity", "Friedrichs cosine and operator-part norm as the angle closes",
                           gen_continuity, CHECK_FN(check_continuity)));
  out.push_back(make_suite("wlss", "weighted least squares against the normal equations", gen_wlss,
                           CHECK_FN(check_wlss)));
  out.push_back(make_suite("pinv", "pseudo-inverse through relations against the SVD", gen_pinv,
                           CHECK_FN(check_pinv)));
}

}  // namespace mvrel::verify

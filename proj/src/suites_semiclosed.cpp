#include <algorithm>
#include <cmath>

#include "mvrel/semiclosed.hpp"
#include "suite_util.hpp"

namespace mvrel::verify {

namespace {

using detail::get_mat;
using detail::get_n;
using detail::get_sub;
using detail::get_vec;
using detail::make_suite;

auto gen_operators = [](auto t, Rng& rng, const VerifyConfig& c, std::uint64_t) {
  using S = typename decltype(t)::type;
  const Index n = detail::pick_dim(rng, c);
  const auto p = random_operator_pair<S>(rng, n);
  return json{{"n", n}, {"a", io::matrix_to_json(p.a)}, {"b", io::matrix_to_json(p.b)}};
};

template <Scalar S>
std::pair<Mat<S>, Mat<S>> get_ab(const json& j) {
  const Index n = get_n(j);
  return {get_mat<S>(j, "a", n), get_mat<S>(j, "b", n)};
}

template <Scalar S>
void check_gamma(const json& j, const VerifyConfig& c, Checker& ck) {
  const auto [a, b] = get_ab<S>(j);
  const auto rp = row_polar(a, b);
  const auto r = residuals(rp);
  const double bound = c.tol * r.scale;
  ck.le("||A - Γ C_A||", r.douglas_a, bound);
  ck.le("||B - Γ C_B||", r.douglas_b, bound);
  ck.le("||Γ - A C_A* - B C_B*||", r.gamma_reconstruction, bound);
  ck.le("||P_ranΓ - C_A C_A* - C_B C_B*|| scaled", r.range_projector * r.scale, bound);
  ck.le("C_A outside ran Γ", r.ca_outside_frame * r.scale, bound);
  ck.le("C_B outside ran Γ", r.cb_outside_frame * r.scale, bound);
  ck.at_most("||C_A||", r.ca_norm, 1 + 1e-10);
  ck.at_most("||C_B||", r.cb_norm, 1 + 1e-10);
  const Mat<S> g2 = a * a.adjoint() + b * b.adjoint();
  ck.le("Γ² vs AA* + BB*", linalg::op_norm(Mat<S>(rp.gamma * rp.gamma - g2)) / std::max(1.0, linalg::op_norm(g2)),
        c.tol);

  const auto m = range_of(a), n = range_of(b);
  const auto direct = mv_projection(m, n).rel;
  ck.le("L([A B],[A 0]) vs P_{M,N}", distance(semiclosed_projection(a, b), direct), c.tol);
  const auto ando = ando_projection(a, b, c.tol);
  ck.ok("Γ C_A C_A* Γ⁻¹ is an operator part of P_{M,N}", ando.operator_term_is_operator_part);
  ck.le("Γ-form vs P_{M,N}", distance(ando.via_gamma, direct), c.tol);
  ck.le("adjoint form vs P_{M,N}", distance(ando.via_adjoint, direct), c.tol);
  const auto q = as_quotient(direct);
  ck.le("L(C, D) round trip", distance(quotient(q.c, q.d), direct), c.tol);
}

auto gen_conjugate = [](auto t, Rng& rng, const VerifyConfig& c, std::uint64_t) {
  using S = typename decltype(t)::type;
  const Index n = detail::pick_dim(rng, c);
  const auto pr = random_pair<S>(rng, n);
  const auto frame = sum(pr.m, pr.n);
  const Mat<S> g = frame.basis() * random_psd<S>(rng, frame.dim(), frame.dim()) * frame.basis().adjoint();
  json out = detail::pair_instance(pr);
  out["gamma"] = io::matrix_to_json(g);
  // relation form: Γ +̂ ({0} × R) with R ⊆ N
  const Index k = rng.integer(0, pr.n.dim());
  out["extra_mul"] = io::matrix_to_json(Mat<S>(pr.n.basis() * gaussian_matrix<S>(rng, pr.n.dim(), k)));
  out["extra_cols"] = k;
  return out;
};

template <Scalar S>
void check_conjugate(const json& j, const VerifyConfig& c, Checker& ck) {
  const auto m = get_sub<S>(j, "m"), n = get_sub<S>(j, "nn");
  const Index d = get_n(j);
  const Mat<S> g = get_mat<S>(j, "gamma", d);
  const auto r = conjugate(g, m, n, c.tol);
  ck.le("Γ⁻¹ P_{M,N} Γ vs P_{Γ⁻¹M, Γ⁻¹N}", distance(r.relation, r.predicted), c.tol);
  const Mat<S> cut = (Mat<S>::Identity(d, d) - m.projector()) * g;
  const auto pre_m = Subspace<S>::from_orthonormal(linalg::null_space(cut, 1e-9 * std::max(1.0, linalg::op_norm(g))));
  ck.le("Γ⁻¹(M) vs ker (I - P_M)Γ", distance(r.pre_m, pre_m), c.tol);
  const Mat<S> extra = get_mat<S>(j, "extra_mul", j.at("extra_cols").get<Index>());
  const auto gr = cw_sum(graph_of(g), product_of(Subspace<S>::zero(d), Subspace<S>::span(extra)));
  const auto rr = conjugate(gr, m, n, c.tol);
  ck.le("relation Γ: Γ⁻¹ P_{M,N} Γ vs P_{Γ⁻¹M, Γ⁻¹N}", distance(rr.relation, rr.predicted), c.tol);
}

template <Scalar S>
void check_quasiaffine(const json& j, const VerifyConfig& c, Checker& ck) {
  const auto [a, b] = get_ab<S>(j);
  const auto q = quasi_affine_form(a, b, c.tol);
  ck.le("P X vs X (C +̂ {0}×S) on the frame", q.intertwining_distance, c.tol);
  ck.at_most("||C||", q.c_norm, 1 + 1e-10);
  if (q.frame.cols() > 0) ck.ok("X injective on the frame", q.x_min_eig > 0);
  ck.ok("quasi-affine form", q.ok);
}

template <Scalar S>
void check_splitting(const json& j, const VerifyConfig& c, Checker& ck) {
  const auto [a, b] = get_ab<S>(j);
  const auto s = gamma_splitting(a, b, c.tol);
  ck.ok("M + N = Γ(ker C_B*) ∔ Γ(ker C_A*) ∔ M∩N", s.sum_ok);
  ck.ok("M = Γ(ker C_B*) ∔ M∩N", s.m_ok);
  ck.ok("N = Γ(ker C_A*) ∔ M∩N", s.n_ok);
  ck.ok("P_{M,N} = P_{Γ(ker C_B*)//N} ∔̂ ({0}×M∩N)", s.corollary_ok);
  ck.ok("direct", s.direct);
}

template <Scalar S>
void check_orthogonalize(const json& j, const VerifyConfig& c, Checker& ck) {
  const auto [a, b] = get_ab<S>(j);
  const auto o = orthogonalize(a, b, c.tol);
  ck.le("||P0² - P0||", o.p0_idempotency, 1e-9);
  ck.le("||P0 - P0*||", o.p0_selfadjoint, 1e-9);
  ck.le("P_{M,N} X vs X (P0 ⊕̂ ({0}×S))", o.intertwining_distance, c.tol);
  ck.ok("Γ⁻¹ E Γ is a multivalued projection", o.conjugated_is_mv_projection);
  ck.ok("dom Γ⁻¹ E Γ is the whole space", o.conjugated_domain_full);
  ck.ok("P0 = P_{ker C_B* ⊖ (ker C_A* ∩ ker C_B*)}", o.p0_matches_formula);
  ck.ok("Γ⁻¹ E Γ = P0 ⊕̂ ({0}×S)", o.orthogonal_split);
}

auto gen_ando_split = [](auto t, Rng& rng, const VerifyConfig& c, std::uint64_t) {
  using S = typename decltype(t)::type;
  const Index n = detail::pick_dim(rng, c);
  const auto p = random_operator_pair<S>(rng, n);
  const Vec<S> h = gaussian_vector<S>(rng, n), k = gaussian_vector<S>(rng, n);
  return json{{"n", n},
              {"a", io::matrix_to_json(p.a)},
              {"b", io::matrix_to_json(p.b)},
              {"u", io::vector_to_json<S>(Vec<S>(p.a * h + p.b * k))},
              {"step", io::vector_to_json<S>(gaussian_vector<S>(rng, n))},
              {"probe", io::vector_to_json<S>(gaussian_vector<S>(rng, n))}};
};

template <Scalar S>
void check_ando_split(const json& j, const VerifyConfig& c, Checker& ck) {
  const auto [t1, t2] = get_ab<S>(j);
  const Index n = get_n(j);
  const Vec<S> u = get_vec<S>(j, "u");
  const auto r = ando_split(t1, t2, u, c.tol);
  const double scale = std::max(1.0, r.norm_t_sq);
  ck.le("Pythagoras ||u||²_T = ||u1||²_T1 + ||u2||²_T2", r.pythagoras_residual / scale, c.tol);
  ck.le("u1 + u2 = u", r.reconstruction_residual / std::max(1.0, u.norm()), c.tol);

  // min ||h||² + ||k||² subject to T1 h + T2 k = u, by the normal equations
  const Mat<S> row = linalg::hstack(t1, t2);
  Eigen::CompleteOrthogonalDecomposition<Mat<S>> cod;
  cod.setThreshold(kRankTol);
  cod.compute(row);
  const Vec<S> hk = cod.solve(u);
  const double oracle = hk.squaredNorm();
  ck.le("||u||²_T vs min-norm oracle", std::abs(r.norm_t_sq - oracle) / std::max(1.0, oracle), c.tol);
  ck.le("||u1||²_T1 + ||u2||²_T2 vs oracle", std::abs(r.norm1_sq + r.norm2_sq - oracle) / std::max(1.0, oracle), c.tol);

  // any other split (u1 + v, u2 - v) with v ∈ ran T1 ∩ ran T2 is no shorter
  const Subspace<S> common = intersect(range_of(t1), range_of(t2));
  if (!common.is_zero()) {
    const Vec<S> v = common.basis() * (common.basis().adjoint() * get_vec<S>(j, "step"));
    const Mat<S> p1 = linalg::pinv_rel(t1, kRankTol), p2 = linalg::pinv_rel(t2, kRankTol);
    const double other = (p1 * (r.u1 + v)).squaredNorm() + (p2 * (r.u2 - v)).squaredNorm();
    ck.ok("perturbed split is no shorter", other + c.tol * scale >= r.norm1_sq + r.norm2_sq);
    ck.count("perturbed");
  }

  // M(T) norm dominates the ambient norm up to ||T||
  const OperatorRangeSpace<S> sp(row_polar(t1, t2).gamma);
  const double tn = linalg::op_norm(sp.t);
  const Vec<S> w = sp.ran.basis() * (sp.ran.basis().adjoint() * get_vec<S>(j, "probe"));
  ck.ok("||w|| <= ||T|| ||w||_T", w.norm() <= tn * mt_norm(sp, w, c.tol) + c.tol * std::max(1.0, w.norm()));
  (void)n;
}

auto gen_debranges = [](auto t, Rng& rng, const VerifyConfig& c, std::uint64_t index) {
  using S = typename decltype(t)::type;
  const Index n = detail::pick_dim(rng, c);
  const bool iso = index % 10 == 9;
  return json{{"n", n}, {"isometry_like", iso}, {"t", io::matrix_to_json(random_contraction<S>(rng, n, iso))}};
};

template <Scalar S>
void check_debranges(const json& j, const VerifyConfig& c, Checker& ck) {
  const Index n = get_n(j);
  const Mat<S> t = get_mat<S>(j, "t", n);
  const auto d = debranges(t, c.tol);
  ck.ok("S + S' is the whole space", d.sum_is_full);
  ck.at_most("||P_{S,S'}||", d.op_norm, 1 + 1e-9);
  ck.le("overlap vs S ∩ S'", distance(d.overlap, multivalued_part(d.relation)), c.tol);
  if (j.at("isometry_like").get<bool>()) {
    ck.count("isometry_like");
    ck.ok("isometry-like: ||P_{S,S'}|| >= 1 - 1e-6", d.op_norm >= 1 - 1e-6);
  } else {
    ck.count("general");
  }
}

#define CHECK_FN(name) \
  [](auto t, const json& j, const VerifyConfig& c, Checker& ck) { name<typename decltype(t)::type>(j, c, ck); }

}  // namespace

void register_semiclosed_suites(std::vector<Suite>& out) {
  out.push_back(make_suite("gamma", "Douglas factors, Ando forms and the quotient presentation", gen_operators,
                           CHECK_FN(check_gamma)));
  out.push_back(make_suite("conjugate", "Γ⁻¹ P_{M,N} Γ = P_{Γ⁻¹M, Γ⁻¹N}", gen_conjugate, CHECK_FN(check_conjugate)));
  out.push_back(make_suite("quasiaffine", "quasi-affine intertwining on M + N", gen_operators,
                           CHECK_FN(check_quasiaffine)));
  out.push_back(make_suite("splitting", "M + N = Γ(ker C_B*) ∔ Γ(ker C_A*) ∔ M∩N", gen_operators,
                           CHECK_FN(check_splitting)));
  out.push_back(make_suite("orthogonalize", "P0 and the intertwining P_{M,N} X = X(P0 ⊕̂ ({0}×S))", gen_operators,
                           CHECK_FN(check_orthogonalize)));
  out.push_back(make_suite("ando_split", "Pythagoras and minimality of the operator-range split", gen_ando_split,
                           CHECK_FN(check_ando_split)));
  out.push_back(make_suite("debranges", "complementation S + S' and ||P_{S,S'}|| <= 1", gen_debranges,
                           CHECK_FN(check_debranges)));
}

}  // namespace mvrel::verify

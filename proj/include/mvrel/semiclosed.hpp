#pragma once

#include <algorithm>
#include <cmath>
#include <string>

#include "mvrel/decomposition.hpp"
#include "mvrel/projection.hpp"
#include "mvrel/relation.hpp"
#include "mvrel/subspace.hpp"

namespace mvrel {

/// Two operators A, B presenting M = ran A and N = ran B, with
/// Γ = (AA* + BB*)^{1/2} and the Douglas factors A = Γ C_A, B = Γ C_B.
template <Scalar S>
struct RangePair {
  Mat<S> a, b;
  Mat<S> gamma, gamma_pinv;
  Mat<S> ca, cb;
  Subspace<S> frame;  // ran Γ = M + N
};

struct RangePairResiduals {
  double douglas_a = 0, douglas_b = 0;  // ||A - Γ C_A||, ||B - Γ C_B||
  double gamma_reconstruction = 0;      // ||Γ - A C_A* - B C_B*||
  double range_projector = 0;           // ||P_ranΓ - C_A C_A* - C_B C_B*||
  double ca_norm = 0, cb_norm = 0;
  double ca_outside_frame = 0, cb_outside_frame = 0;  // ||(I - P_ranΓ) C||
  double kernel_mismatch = 0;  // ||C*C - P_{ker[A B]⊥}||, ker [C_A C_B] = ker [A B]
  double scale = 1;            // max(1, ||[A B]||)

  double worst_identity() const {
    return std::max({douglas_a, douglas_b, gamma_reconstruction, range_projector * scale,
                     ca_outside_frame * scale, cb_outside_frame * scale, kernel_mismatch * scale});
  }
};

template <Scalar S>
RangePairResiduals residuals(const RangePair<S>& rp) {
  const Index n = rp.gamma.rows();
  const Mat<S> row = linalg::hstack(rp.a, rp.b);
  const Mat<S> c = linalg::hstack(rp.ca, rp.cb);
  const Mat<S> pf = rp.frame.projector();
  const Mat<S> outside = Mat<S>::Identity(n, n) - pf;
  const Subspace<S> row_ker_perp = complement(kernel_of(row, rp.frame.tol()));
  RangePairResiduals r;
  r.scale = std::max(1.0, linalg::op_norm(row));
  r.douglas_a = linalg::op_norm(Mat<S>(rp.a - rp.gamma * rp.ca));
  r.douglas_b = linalg::op_norm(Mat<S>(rp.b - rp.gamma * rp.cb));
  r.gamma_reconstruction = linalg::op_norm(Mat<S>(rp.gamma - rp.a * rp.ca.adjoint() - rp.b * rp.cb.adjoint()));
  r.range_projector = linalg::op_norm(Mat<S>(pf - rp.ca * rp.ca.adjoint() - rp.cb * rp.cb.adjoint()));
  r.ca_norm = linalg::op_norm(rp.ca);
  r.cb_norm = linalg::op_norm(rp.cb);
  r.ca_outside_frame = linalg::op_norm(Mat<S>(outside * rp.ca));
  r.cb_outside_frame = linalg::op_norm(Mat<S>(outside * rp.cb));
  r.kernel_mismatch = linalg::op_norm(Mat<S>(c.adjoint() * c - row_ker_perp.projector()));
  return r;
}

namespace detail {
// The Douglas factors are contractions, so their rank decisions use an
// absolute floor: a factor of a zero operator is SVD noise, not a direction.
template <Scalar S>
Subspace<S> factor_range(const Mat<S>& c, double tol) {
  return Subspace<S>::span_unit(c, tol);
}

template <Scalar S>
Subspace<S> factor_kernel(const Mat<S>& c, double tol) {
  return Subspace<S>::from_orthonormal(linalg::null_space(c, tol * std::max(1.0, linalg::op_norm(c))), tol);
}
}  // namespace detail

/// Left polar decomposition [A B] = Γ [C_A C_B], taken from the SVD of the
/// row operator: Γ = U Σ U*, [C_A C_B] = U V*. All RangePair identities are
/// checked to tol * max(1, ||[A B]||).
template <Scalar S>
RangePair<S> row_polar(const Mat<S>& a, const Mat<S>& b, double rank_tol = kRankTol,
                       double tol = kCompareTol) {
  require_dims(a.rows() == b.rows(), "row_polar: A and B must have the same number of rows");
  const Index n = a.rows();
  const Mat<S> row = linalg::hstack(a, b);
  RangePair<S> rp;
  rp.a = a;
  rp.b = b;
  rp.gamma = Mat<S>::Zero(n, n);
  rp.gamma_pinv = Mat<S>::Zero(n, n);
  Mat<S> c = Mat<S>::Zero(n, row.cols());
  Mat<S> frame(n, 0);
  if (row.cols() > 0 && n > 0) {
    Eigen::JacobiSVD<Mat<S>> svd(row, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    Index r = 0;
    while (r < sv.size() && sv(r) > rank_tol * sv(0)) ++r;
    const Mat<S> u = svd.matrixU().leftCols(r);
    const Mat<S> v = svd.matrixV().leftCols(r);
    const Eigen::VectorXd s = sv.head(r);
    rp.gamma = u * s.cast<S>().asDiagonal() * u.adjoint();
    rp.gamma_pinv = u * s.cwiseInverse().cast<S>().asDiagonal() * u.adjoint();
    c = u * v.adjoint();
    frame = u;
  }
  rp.ca = c.leftCols(a.cols());
  rp.cb = c.rightCols(b.cols());
  rp.frame = Subspace<S>::from_orthonormal(std::move(frame), rank_tol);

  const RangePairResiduals res = residuals(rp);
  if (res.worst_identity() > tol * res.scale || res.ca_norm > 1 + tol || res.cb_norm > 1 + tol)
    throw InvariantError("row_polar: Douglas factorization identities fail");
  return rp;
}

/// L(C, D) = {(Cx, Dx)} = D C⁻¹.
template <Scalar S>
LinearRelation<S> quotient(const Mat<S>& c, const Mat<S>& d, double tol = kRankTol) {
  require_dims(c.cols() == d.cols(), "quotient: C and D must share their domain");
  return LinearRelation<S>::from_generators(linalg::vstack(c, d), c.rows(), d.rows(), tol);
}

template <Scalar S>
struct QuotientPair {
  Mat<S> c, d;
};

/// One (C, D) with T = L(C, D): the blocks of an orthonormal graph basis.
template <Scalar S>
QuotientPair<S> as_quotient(const LinearRelation<S>& t) {
  return {Mat<S>(t.input_block()), Mat<S>(t.output_block())};
}

/// L([A B], [A 0]) = {(Ah + Bk, Ah)}.
template <Scalar S>
LinearRelation<S> semiclosed_projection(const Mat<S>& a, const Mat<S>& b, double tol = kRankTol) {
  require_dims(a.rows() == b.rows(), "semiclosed_projection: A and B must have the same number of rows");
  const Mat<S> zero = Mat<S>::Zero(b.rows(), b.cols());
  return quotient(linalg::hstack(a, b), linalg::hstack(a, zero), tol);
}

template <Scalar S>
struct AndoProjection {
  LinearRelation<S> operator_term;  // Γ C_A C_A* Γ⁻¹
  LinearRelation<S> via_gamma;      // Γ C_A C_A* Γ⁻¹ ∔̂ ({0} × M∩N)
  LinearRelation<S> via_adjoint;    // (Γ⁻¹ A A*)* Γ⁻¹ ∔̂ ({0} × M∩N)
  bool operator_term_is_operator_part = false;
  bool gamma_form_matches = false;
  bool adjoint_form_matches = false;
};

template <Scalar S>
AndoProjection<S> ando_projection(const Mat<S>& a, const Mat<S>& b, double tol = kCompareTol) {
  const RangePair<S> rp = row_polar(a, b);
  const double rtol = rp.frame.tol();
  const Subspace<S> m = range_of(a, rtol);
  const Subspace<S> n = range_of(b, rtol);
  const Subspace<S> common = intersect(m, n);
  const LinearRelation<S> mul_part = product_of(Subspace<S>::zero(a.rows(), rtol), common);
  const LinearRelation<S> gamma_inv = inverse(graph_of(rp.gamma, rtol));

  AndoProjection<S> r;
  r.operator_term = compose(graph_of(Mat<S>(rp.gamma * rp.ca * rp.ca.adjoint()), rtol), gamma_inv);
  r.via_gamma = cw_sum(r.operator_term, mul_part);
  const LinearRelation<S> lhs = compose(gamma_inv, graph_of(Mat<S>(a * a.adjoint()), rtol));
  r.via_adjoint = cw_sum(compose(adjoint(lhs), gamma_inv), mul_part);

  const MvProjection<S> direct = mv_projection(m, n);
  const Parts<S> op = parts(r.operator_term);
  r.operator_term_is_operator_part = op.is_operator && equal(op.dom, sum(m, n), tol) &&
                                     is_subset(r.operator_term, direct.rel, tol);
  r.gamma_form_matches = equal(r.via_gamma, direct.rel, tol);
  r.adjoint_form_matches = equal(r.via_adjoint, direct.rel, tol);
  return r;
}

template <Scalar S>
struct ConjugateReport {
  LinearRelation<S> relation;   // Γ⁻¹ P_{M,N} Γ
  LinearRelation<S> predicted;  // P_{Γ⁻¹(M), Γ⁻¹(N)}
  Subspace<S> pre_m, pre_n;
  bool matches = false;
};

namespace detail {
template <Scalar S>
ConjugateReport<S> conjugate_impl(const LinearRelation<S>& g, const Subspace<S>& pre_m,
                                  const Subspace<S>& pre_n, const Subspace<S>& m,
                                  const Subspace<S>& n, double tol) {
  const Subspace<S> ran_g = range(g);
  if (!equal(ran_g, sum(m, n), tol))
    throw PreconditionError("conjugate: hypothesis ran Γ = M + N fails");
  if (!is_subset(multivalued_part(g), n, tol))
    throw PreconditionError("conjugate: hypothesis mul Γ ⊆ N fails");
  ConjugateReport<S> r;
  r.relation = compose(inverse(g), compose(mv_projection(m, n).rel, g));
  r.pre_m = pre_m;
  r.pre_n = pre_n;
  r.predicted = mv_projection(pre_m, pre_n).rel;
  r.matches = equal(r.relation, r.predicted, tol);
  return r;
}
}  // namespace detail

/// Γ⁻¹ P_{M,N} Γ for a matrix Γ; the preimages Γ⁻¹(M), Γ⁻¹(N) are computed
/// independently as nullspaces of (I - P_M) Γ and (I - P_N) Γ.
template <Scalar S>
ConjugateReport<S> conjugate(const Mat<S>& gamma, const Subspace<S>& m, const Subspace<S>& n,
                             double tol = kCompareTol) {
  detail::same_ambient(m, n);
  require_dims(gamma.rows() == m.ambient() && gamma.cols() == m.ambient(), "conjugate: Γ has wrong size");
  const double rtol = detail::joint_tol(m, n);
  return detail::conjugate_impl(graph_of(gamma, rtol), preimage(gamma, m), preimage(gamma, n), m, n, tol);
}

/// Relation form: Γ may itself be multivalued (mul Γ ⊆ N required).
template <Scalar S>
ConjugateReport<S> conjugate(const LinearRelation<S>& gamma, const Subspace<S>& m, const Subspace<S>& n,
                             double tol = kCompareTol) {
  detail::same_ambient(m, n);
  require_dims(gamma.dim_in() == m.ambient() && gamma.dim_out() == m.ambient(),
               "conjugate: Γ has wrong shape");
  const LinearRelation<S> inv = inverse(gamma);
  return detail::conjugate_impl(gamma, image(inv, m), image(inv, n), m, n, tol);
}

/// Orthonormal coordinates U of the frame M + N = ran Γ; maps a subspace of
/// the ambient space contained in the frame to frame coordinates.
template <Scalar S>
Subspace<S> to_frame(const Mat<S>& u, const Subspace<S>& s) {
  return Subspace<S>::span_unit(Mat<S>(u.adjoint() * s.basis()), s.tol());
}

template <Scalar S>
struct QuasiAffineForm {
  Mat<S> frame;  // n x k orthonormal basis of M + N
  Mat<S> x;      // Γ on the frame (k x k)
  Mat<S> c;      // C_A C_A* on the frame
  Subspace<S> s; // ran C_A ∩ ran C_B in frame coordinates
  double intertwining_distance = 0;  // graph distance of P X vs X (C ∔̂ {0}×S)
  double c_norm = 0;
  double c_min_eig = 0;
  double x_min_eig = 0;
  bool ok = false;
};

/// P_{M,N} X = X (C ∔̂ ({0} × S)) on the frame M + N.
template <Scalar S>
QuasiAffineForm<S> quasi_affine_form(const Mat<S>& a, const Mat<S>& b, double tol = kCompareTol) {
  const RangePair<S> rp = row_polar(a, b);
  const double rtol = rp.frame.tol();
  const Mat<S>& u = rp.frame.basis();
  QuasiAffineForm<S> q;
  q.frame = u;
  q.x = u.adjoint() * rp.gamma * u;
  q.c = u.adjoint() * rp.ca * rp.ca.adjoint() * u;
  q.s = to_frame(u, intersect(detail::factor_range(rp.ca, rtol), detail::factor_range(rp.cb, rtol)));
  const Index k = u.cols();
  const MvProjection<S> e = mv_projection(to_frame(u, range_of(a, rtol)), to_frame(u, range_of(b, rtol)));
  const LinearRelation<S> gx = graph_of(q.x, rtol);
  const LinearRelation<S> lhs = compose(e.rel, gx);
  const LinearRelation<S> rhs =
      compose(gx, cw_sum(graph_of(q.c, rtol), product_of(Subspace<S>::zero(k, rtol), q.s)));
  q.intertwining_distance = distance(lhs, rhs);
  q.c_norm = linalg::op_norm(q.c);
  q.c_min_eig = linalg::min_eigenvalue(q.c);
  q.x_min_eig = linalg::min_eigenvalue(q.x);
  q.ok = q.intertwining_distance <= tol && q.c_norm <= 1 + tol && q.c_min_eig >= -tol &&
         (k == 0 || q.x_min_eig > 0) && linalg::op_norm(Mat<S>(q.x - q.x.adjoint())) <= tol * std::max(1.0, linalg::op_norm(q.x));
  return q;
}

template <Scalar S>
struct GammaSplitting {
  Subspace<S> gamma_ker_cb_adj;  // Γ(ker C_B*)
  Subspace<S> gamma_ker_ca_adj;  // Γ(ker C_A*)
  Subspace<S> common;            // M ∩ N
  bool direct = false;
  bool sum_ok = false;  // M + N = Γ(ker C_B*) ∔ Γ(ker C_A*) ∔ M∩N
  bool m_ok = false;    // M = Γ(ker C_B*) ∔ M∩N
  bool n_ok = false;    // N = Γ(ker C_A*) ∔ M∩N
  bool corollary_ok = false;  // P_{M,N} = P_{Γ(ker C_B*) // N} ∔̂ ({0} × M∩N)
  bool all() const { return direct && sum_ok && m_ok && n_ok && corollary_ok; }
};

template <Scalar S>
GammaSplitting<S> gamma_splitting(const Mat<S>& a, const Mat<S>& b, double tol = kCompareTol) {
  const RangePair<S> rp = row_polar(a, b);
  const double rtol = rp.frame.tol();
  const Subspace<S> m = range_of(a, rtol);
  const Subspace<S> n = range_of(b, rtol);
  GammaSplitting<S> g;
  g.gamma_ker_cb_adj = image(rp.gamma, detail::factor_kernel(Mat<S>(rp.cb.adjoint()), rtol));
  g.gamma_ker_ca_adj = image(rp.gamma, detail::factor_kernel(Mat<S>(rp.ca.adjoint()), rtol));
  g.common = intersect(m, n);
  const Index d1 = g.gamma_ker_cb_adj.dim(), d2 = g.gamma_ker_ca_adj.dim(), d3 = g.common.dim();
  const Subspace<S> s12 = sum(g.gamma_ker_cb_adj, g.gamma_ker_ca_adj);
  const Subspace<S> all = sum(s12, g.common);
  g.direct = s12.dim() == d1 + d2 && all.dim() == d1 + d2 + d3;
  g.sum_ok = equal(all, sum(m, n), tol);
  const Subspace<S> m_rebuilt = sum(g.gamma_ker_cb_adj, g.common);
  const Subspace<S> n_rebuilt = sum(g.gamma_ker_ca_adj, g.common);
  g.m_ok = m_rebuilt.dim() == d1 + d3 && equal(m_rebuilt, m, tol);
  g.n_ok = n_rebuilt.dim() == d2 + d3 && equal(n_rebuilt, n, tol);
  const LinearRelation<S> cor = cw_sum(mv_projection(g.gamma_ker_cb_adj, n).rel,
                                       product_of(Subspace<S>::zero(a.rows(), rtol), g.common));
  g.corollary_ok = equal(cor, mv_projection(m, n).rel, tol);
  return g;
}

template <Scalar S>
struct Orthogonalization {
  Mat<S> p0;                    // (Γ⁻¹ E Γ)₀
  Subspace<S> s;                // Γ⁻¹(M ∩ N) = mul Γ⁻¹ E Γ
  Mat<S> x;                     // Γ
  LinearRelation<S> conjugated; // Γ⁻¹ E Γ
  double p0_idempotency = 0;    // ||P0² - P0||
  double p0_selfadjoint = 0;    // ||P0 - P0*||
  bool conjugated_is_mv_projection = false;
  bool conjugated_domain_full = false;
  bool p0_matches_formula = false;  // P0 = P_{ker C_B* ⊖ (ker C_A* ∩ ker C_B*)}
  bool orthogonal_split = false;    // Γ⁻¹EΓ = P0 ⊕̂ ({0} × S)
  double intertwining_distance = 0; // on the frame: E X vs X (P0 ⊕̂ {0}×S)
};

template <Scalar S>
Orthogonalization<S> orthogonalize(const Mat<S>& a, const Mat<S>& b, double tol = kCompareTol) {
  const RangePair<S> rp = row_polar(a, b);
  const double rtol = rp.frame.tol();
  const Index n = a.rows();
  const Subspace<S> m = range_of(a, rtol);
  const Subspace<S> nn = range_of(b, rtol);
  const MvProjection<S> e = mv_projection(m, nn);
  const LinearRelation<S> g = graph_of(rp.gamma, rtol);

  Orthogonalization<S> o;
  o.x = rp.gamma;
  o.conjugated = compose(inverse(g), compose(e.rel, g));
  o.conjugated_is_mv_projection = classify(o.conjugated, tol).kind == RelationClass::mv_projection;
  o.conjugated_domain_full = domain(o.conjugated).is_full();
  o.p0 = operator_part(t0(o.conjugated)).matrix;
  o.s = multivalued_part(o.conjugated);
  o.p0_idempotency = linalg::op_norm(Mat<S>(o.p0 * o.p0 - o.p0));
  o.p0_selfadjoint = linalg::op_norm(Mat<S>(o.p0 - o.p0.adjoint()));

  const Subspace<S> ker_ca = detail::factor_kernel(Mat<S>(rp.ca.adjoint()), rtol);
  const Subspace<S> ker_cb = detail::factor_kernel(Mat<S>(rp.cb.adjoint()), rtol);
  const Mat<S> formula = minus(ker_cb, intersect(ker_ca, ker_cb)).projector();
  o.p0_matches_formula = linalg::op_norm(Mat<S>(o.p0 - formula)) <= tol;

  const LinearRelation<S> split =
      cw_sum(graph_of(o.p0, rtol), product_of(Subspace<S>::zero(n, rtol), o.s));
  o.orthogonal_split = equal(split, o.conjugated, tol) &&
                       sum_flags(graph_of(o.p0, rtol), product_of(Subspace<S>::zero(n, rtol), o.s), tol).orthogonal;

  const Mat<S>& u = rp.frame.basis();
  const Index k = u.cols();
  const LinearRelation<S> ef = mv_projection(to_frame(u, m), to_frame(u, nn)).rel;
  const LinearRelation<S> xf = graph_of(Mat<S>(u.adjoint() * rp.gamma * u), rtol);
  const Subspace<S> sf = to_frame(u, intersect(o.s, rp.frame));
  const LinearRelation<S> rhs = compose(
      xf, cw_sum(graph_of(Mat<S>(u.adjoint() * o.p0 * u), rtol), product_of(Subspace<S>::zero(k, rtol), sf)));
  o.intertwining_distance = distance(compose(ef, xf), rhs);
  return o;
}

/// M(T): ran T with <u, v>_T = <T†u, T†v>.
template <Scalar S>
struct OperatorRangeSpace {
  Mat<S> t;
  Mat<S> t_pinv;
  Subspace<S> ran;

  explicit OperatorRangeSpace(Mat<S> op, double rank_tol = kRankTol)
      : t(std::move(op)), t_pinv(linalg::pinv_rel(t, rank_tol)), ran(range_of(t, rank_tol)) {}

  void check_member(const Vec<S>& u, double tol) const {
    require_dims(u.size() == t.rows(), "M(T): vector has wrong length");
    if (!ran.contains(u, tol)) throw PreconditionError("M(T): vector is not in ran T");
  }
};

template <Scalar S>
S mt_inner(const OperatorRangeSpace<S>& sp, const Vec<S>& u, const Vec<S>& v, double tol = kCompareTol) {
  sp.check_member(u, tol);
  sp.check_member(v, tol);
  return inner<S>(Vec<S>(sp.t_pinv * u), Vec<S>(sp.t_pinv * v));
}

template <Scalar S>
double mt_norm(const OperatorRangeSpace<S>& sp, const Vec<S>& u, double tol = kCompareTol) {
  sp.check_member(u, tol);
  return (sp.t_pinv * u).norm();
}

template <Scalar S>
struct AndoSplit {
  Vec<S> u1, u2;
  double norm_t_sq = 0;   // ||u||²_T
  double norm1_sq = 0;    // ||u1||²_{T1}
  double norm2_sq = 0;    // ||u2||²_{T2}
  double pythagoras_residual = 0;
  double reconstruction_residual = 0;  // ||u1 + u2 - u||
};

/// Unique split u = u1 + u2 with u_i ∈ ran T_i attaining
/// ||u||²_T = ||u1||²_{T1} + ||u2||²_{T2}, T = (T1T1* + T2T2*)^{1/2}.
template <Scalar S>
AndoSplit<S> ando_split(const Mat<S>& t1, const Mat<S>& t2, const Vec<S>& u, double tol = kCompareTol) {
  const RangePair<S> rp = row_polar(t1, t2);
  require_dims(u.size() == t1.rows(), "ando_split: vector has wrong length");
  if (!rp.frame.contains(u, tol)) throw PreconditionError("ando_split: u is not in ran T");
  const Vec<S> w = rp.gamma_pinv * u;
  AndoSplit<S> r;
  r.u1 = t1 * (rp.ca.adjoint() * w);
  r.u2 = t2 * (rp.cb.adjoint() * w);
  const double rtol = rp.frame.tol();
  r.norm_t_sq = w.squaredNorm();
  r.norm1_sq = (linalg::pinv_rel(t1, rtol) * r.u1).squaredNorm();
  r.norm2_sq = (linalg::pinv_rel(t2, rtol) * r.u2).squaredNorm();
  r.pythagoras_residual = std::abs(r.norm_t_sq - r.norm1_sq - r.norm2_sq);
  r.reconstruction_residual = (r.u1 + r.u2 - u).norm();
  return r;
}

template <Scalar S>
struct DeBranges {
  Subspace<S> s, s_prime, overlap;
  LinearRelation<S> relation;  // P_{S,S'}
  double op_norm = 0;          // ||Q P_{S,S'}||
  bool sum_is_full = false;
  bool norm_bound_ok = false;
};

/// De Branges-Rovnyak complement S' = M((I - TT*)^{1/2}) of S = M(T).
template <Scalar S>
DeBranges<S> debranges(const Mat<S>& t, double tol = kCompareTol, double norm_tol = 1e-9) {
  require_dims(t.rows() == t.cols(), "debranges: T must be square");
  if (linalg::op_norm(t) > 1 + tol) throw PreconditionError("debranges: T is not a contraction");
  const Index n = t.rows();
  // I - TT* has spectrum in [0, 1]; rounding at isometric directions is
  // clipped absolutely.
  const Mat<S> defect = linalg::psd_sqrt(Mat<S>(Mat<S>::Identity(n, n) - t * t.adjoint()), kRankTol, kRankTol);
  DeBranges<S> d;
  d.s = range_of(t);
  d.s_prime = range_of(defect);
  d.overlap = intersect(d.s, d.s_prime);
  d.relation = mv_projection(d.s, d.s_prime).rel;
  d.op_norm = operator_part(d.relation).norm;
  d.sum_is_full = sum(d.s, d.s_prime).is_full();
  d.norm_bound_ok = d.op_norm <= 1 + norm_tol;
  return d;
}

}  // namespace mvrel

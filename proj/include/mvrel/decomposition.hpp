#pragma once

#include <optional>
#include <string>

#include "mvrel/projection.hpp"
#include "mvrel/relation.hpp"
#include "mvrel/subspace.hpp"

namespace mvrel {

enum class DecompositionKind { componentwise, range_orthogonal };

template <Scalar S>
struct Decomposition {
  LinearRelation<S> original;
  LinearRelation<S> operator_term;
  LinearRelation<S> residual_term;
  DecompositionKind kind = DecompositionKind::range_orthogonal;
};

/// T₀ = T ∩ (dom T × dom T*). Closures are identities here.
template <Scalar S>
LinearRelation<S> t0(const LinearRelation<S>& t) {
  const Subspace<S> box = product(domain(t), domain(adjoint(t)));
  return LinearRelation<S>(t.dim_in(), t.dim_out(), intersect(t.graph(), box));
}

namespace detail {
template <Scalar S>
Decomposition<S> split_by_projector(const LinearRelation<S>& t, const Mat<S>& p) {
  const Mat<S> ip = Mat<S>::Identity(p.rows(), p.cols()) - p;
  return {t, compose(graph_of(p, t.tol()), t), compose(graph_of(ip, t.tol()), t),
          DecompositionKind::range_orthogonal};
}
}  // namespace detail

/// Lebesgue decomposition T = P T + (I - P) T with P onto dom T*.
template <Scalar S>
Decomposition<S> lebesgue(const LinearRelation<S>& t) {
  return detail::split_by_projector(t, domain(adjoint(t)).projector());
}

/// Weak Lebesgue decomposition T = Q T + (I - Q) T with Q onto (mul T)⊥.
template <Scalar S>
Decomposition<S> weak_lebesgue(const LinearRelation<S>& t) {
  return detail::split_by_projector(t, complement(multivalued_part(t)).projector());
}

/// Checks a range-orthogonal decomposition: T = op_sum of the terms, the
/// first term is an operator and the two ranges are orthogonal.
template <Scalar S>
bool verify_range_orthogonal(const Decomposition<S>& d, double tol = kCompareTol) {
  if (!equal(op_sum(d.operator_term, d.residual_term), d.original, tol)) return false;
  if (!is_operator(d.operator_term)) return false;
  const Subspace<S> r1 = range(d.operator_term);
  const Subspace<S> r2 = range(d.residual_term);
  if (r1.is_zero() || r2.is_zero()) return true;
  return linalg::op_norm(Mat<S>(r1.basis().adjoint() * r2.basis())) <= tol;
}

struct DecomposabilityReport {
  bool flag = false;
  bool dom_t0_is_dom = false;     // (1) T decomposable
  bool ran_sing_in_mul = false;   // (2)
  bool t0_is_reg = false;         // (3)
  bool t0_is_m = false;           // (4)
  bool mul_closure = true;        // mul T̄ = closure of mul T, trivial here
};

/// Evaluates the four equivalent decomposability conditions independently
/// and throws InvariantError if they disagree.
template <Scalar S>
DecomposabilityReport is_decomposable(const LinearRelation<S>& t, double tol = kCompareTol) {
  const LinearRelation<S> zero_part = t0(t);
  const Decomposition<S> leb = lebesgue(t);
  const Decomposition<S> weak = weak_lebesgue(t);
  DecomposabilityReport r;
  r.dom_t0_is_dom = equal(domain(zero_part), domain(t), tol);
  r.ran_sing_in_mul = is_subset(range(leb.residual_term), multivalued_part(t), tol);
  r.t0_is_reg = equal(zero_part, leb.operator_term, tol);
  r.t0_is_m = equal(zero_part, weak.operator_term, tol);
  r.mul_closure = equal(multivalued_part(closure(t)), multivalued_part(t), tol);
  r.flag = r.dom_t0_is_dom;
  if (r.ran_sing_in_mul != r.flag || r.t0_is_reg != r.flag || r.t0_is_m != r.flag)
    throw InvariantError("is_decomposable: the four equivalent conditions disagree");
  return r;
}

/// P_{M,N} = P_{M⊖(M∩N) // N} ⊕̂ ({0} × M∩N).
template <Scalar S>
Decomposition<S> decompose_mv(const Subspace<S>& m, const Subspace<S>& n, double tol = kCompareTol) {
  const Subspace<S> common = intersect(m, n);
  const MvProjection<S> whole = mv_projection(m, n);
  Decomposition<S> d{whole.rel, mv_projection(minus(m, common), n).rel,
                     product_of(Subspace<S>::zero(m.ambient(), m.tol()), common),
                     DecompositionKind::componentwise};
  if (!is_operator(d.operator_term))
    throw InvariantError("decompose_mv: operator term has a multivalued part");
  if (!equal(cw_sum(d.operator_term, d.residual_term), d.original, tol))
    throw InvariantError("decompose_mv: componentwise sum does not reproduce P_{M,N}");
  return d;
}

struct MvDecomposabilityReport {
  Index dim_m = 0, dim_n = 0, dim_common = 0, dim_m_reduced = 0;
  bool closed_m = true, closed_n = true;  // automatic in finite dimension
  bool cond_ii = false;   // M + N = (M ∩ (M⊥+N⊥)) ∔ N
  bool cond_iii = false;  // P_{M∩N}(M) = M ∩ N
  bool cond_iv = false;   // M = (M ∩ (M⊥+N⊥)) ⊕ (M ∩ N)
  bool all() const { return cond_ii && cond_iii && cond_iv; }
};

template <Scalar S>
MvDecomposabilityReport decomposability_conditions_mv(const Subspace<S>& m, const Subspace<S>& n,
                                                      double tol = kCompareTol) {
  detail::same_ambient(m, n);
  const Subspace<S> common = intersect(m, n);
  const Subspace<S> reduced = intersect(m, sum(complement(m), complement(n)));
  MvDecomposabilityReport r;
  r.dim_m = m.dim();
  r.dim_n = n.dim();
  r.dim_common = common.dim();
  r.dim_m_reduced = reduced.dim();
  const Subspace<S> mn = sum(m, n);
  r.cond_ii = equal(sum(reduced, n), mn, tol) && reduced.dim() + n.dim() == mn.dim();
  r.cond_iii = equal(image(common.projector(), m), common, tol);
  const bool orth = reduced.is_zero() || common.is_zero() ||
                    linalg::op_norm(Mat<S>(reduced.basis().adjoint() * common.basis())) <= tol;
  r.cond_iv = orth && equal(sum(reduced, common), m, tol) && reduced.dim() + common.dim() == m.dim();
  return r;
}

template <Scalar S>
struct CompressReport {
  bool common_in_ker_f = false;   // M ∩ N ⊆ ker F
  bool domain_condition = false;  // M + N = F(M) + M ∩ ker F + N
  bool range_condition = false;   // F(M) ⊆ M + (N ∩ ker F)
  bool conditions_hold = false;
  // Direct evaluation of E = F P_{M,N}.
  bool product_is_operator = false;
  bool product_is_idempotent = false;
  bool product_ran_in_dom = false;
  bool is_projection = false;
  LinearRelation<S> product;
  std::optional<LinearRelation<S>> predicted;  // P_{F(M) // N + M∩ker F}
  bool matches_prediction = false;
};

/// Compressed projection F P_{M,N} for an orthogonal projector F. The three
/// subspace conditions and a direct evaluation of the product are both
/// reported; when the conditions hold the product is compared with
/// P_{F(M) // N + M∩ker F}.
template <Scalar S>
CompressReport<S> compress(const Mat<S>& f, const Subspace<S>& m, const Subspace<S>& n,
                           double tol = kCompareTol) {
  detail::same_ambient(m, n);
  require_dims(f.rows() == m.ambient() && f.cols() == m.ambient(), "compress: F has wrong size");
  const double scale = std::max(1.0, linalg::op_norm(f));
  if ((f * f - f).norm() > tol * scale || (f - f.adjoint()).norm() > tol * scale)
    throw PreconditionError("compress: F is not an orthogonal projector");
  const double rtol = detail::joint_tol(m, n);
  const Subspace<S> ker_f = kernel_of(f, rtol);
  const Subspace<S> fm = image(f, m);
  const Subspace<S> common = intersect(m, n);
  const Subspace<S> m_ker = intersect(m, ker_f);

  CompressReport<S> r;
  r.common_in_ker_f = is_subset(common, ker_f, tol);
  r.domain_condition = equal(sum(sum(fm, m_ker), n), sum(m, n), tol);
  r.range_condition = is_subset(fm, sum(m, intersect(n, ker_f)), tol);
  r.conditions_hold = r.common_in_ker_f && r.domain_condition && r.range_condition;

  r.product = compose(graph_of(f, rtol), mv_projection(m, n).rel);
  const Parts<S> p = parts(r.product);
  r.product_is_operator = p.is_operator;
  r.product_ran_in_dom = is_subset(p.ran, p.dom, tol);
  r.product_is_idempotent = equal(compose(r.product, r.product), r.product, tol);
  r.is_projection = r.product_is_operator && r.product_ran_in_dom && r.product_is_idempotent;
  if (r.conditions_hold) {
    r.predicted = mv_projection(fm, sum(n, m_ker)).rel;
    r.matches_prediction = equal(*r.predicted, r.product, tol);
  }
  return r;
}

struct ContinuityReport {
  double cosine = 0.0;
  double op_norm = 0.0;
  bool criterion_ok = false;  // M⊥ + N⊥ = (M ∩ N)⊥
  bool trivial_intersection = false;
  double predicted_norm = 0.0;  // 1/sqrt(1 - c²) when M ∩ N = {0} and M != {0}
};

template <Scalar S>
ContinuityReport continuity_report(const Subspace<S>& m, const Subspace<S>& n, double tol = kCompareTol) {
  ContinuityReport r;
  r.cosine = friedrichs_cosine(m, n);
  r.op_norm = operator_part(mv_projection(m, n).rel).norm;
  const Subspace<S> common = intersect(m, n);
  r.criterion_ok = equal(sum(complement(m), complement(n)), complement(common), tol);
  r.trivial_intersection = common.is_zero();
  if (r.trivial_intersection && !m.is_zero())
    r.predicted_norm = 1.0 / std::sqrt(std::max(0.0, 1.0 - r.cosine * r.cosine));
  return r;
}

}  // namespace mvrel

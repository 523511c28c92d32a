#pragma once

#include <string>

#include "mvrel/relation.hpp"
#include "mvrel/subspace.hpp"

namespace mvrel {

/// Multivalued projection P_{M,N} = I_M +̂ (N × {0}).
template <Scalar S>
struct MvProjection {
  Subspace<S> range;
  Subspace<S> kernel;
  LinearRelation<S> rel;
};

template <Scalar S>
MvProjection<S> mv_projection(const Subspace<S>& m, const Subspace<S>& n) {
  detail::same_ambient(m, n);
  return {m, n, cw_sum(identity_on(m), zero_on(n))};
}

template <Scalar S>
Mat<S> identity(Index n) {
  return Mat<S>::Identity(n, n);
}

enum class RelationClass { mv_projection, mv_nilpotent, idempotent_only, none };

inline const char* to_string(RelationClass c) {
  switch (c) {
    case RelationClass::mv_projection: return "mv_projection";
    case RelationClass::mv_nilpotent: return "mv_nilpotent";
    case RelationClass::idempotent_only: return "idempotent_only";
    case RelationClass::none: return "none";
  }
  return "?";
}

/// A containment check together with its numerical margin (sin of the
/// largest principal angle of the left side out of the right side).
struct Containment {
  bool holds = false;
  double residual = 0.0;
};

template <Scalar S>
Containment contained(const Subspace<S>& a, const Subspace<S>& b, double tol) {
  const double r = containment_residual(a, b);
  return {a.dim() <= b.dim() && r <= tol, r};
}

struct ClassifyReport {
  RelationClass kind = RelationClass::none;
  Containment ran_in_dom;
  Containment identity_on_ran;  // I_{ran T} ⊆ T
  Containment ran_in_ker;
  bool idempotent = false;  // T² = T
  bool nilpotent_square = false;  // T² = dom T × mul T
};

/// Projection test first (I_ran ⊆ T), then nilpotent (ran ⊆ ker), then bare
/// idempotency. P_{M,M} = M × M is both; it is reported as a projection with
/// ran_in_ker also set.
template <Scalar S>
ClassifyReport classify(const LinearRelation<S>& t, double tol = kCompareTol) {
  require_dims(t.dim_in() == t.dim_out(), "classify: relation must be square");
  const Parts<S> p = parts(t);
  const LinearRelation<S> sq = compose(t, t);
  ClassifyReport r;
  r.ran_in_dom = contained(p.ran, p.dom, tol);
  r.identity_on_ran = contained(identity_on(p.ran).graph(), t.graph(), tol);
  r.ran_in_ker = contained(p.ran, p.ker, tol);
  r.idempotent = equal(sq, t, tol);
  r.nilpotent_square = equal(sq, product_of(p.dom, p.mul), tol);
  if (r.identity_on_ran.holds)
    r.kind = RelationClass::mv_projection;
  else if (r.ran_in_ker.holds)
    r.kind = RelationClass::mv_nilpotent;
  else if (r.idempotent)
    r.kind = RelationClass::idempotent_only;
  return r;
}

/// P_M ((I - P_N) P_M)⁻¹ (I - P_N) as a relation product.
template <Scalar S>
LinearRelation<S> greville(const Subspace<S>& m, const Subspace<S>& n) {
  detail::same_ambient(m, n);
  const double tol = detail::joint_tol(m, n);
  const Mat<S> pm = m.projector();
  const Mat<S> qn = identity<S>(n.ambient()) - n.projector();
  return compose(graph_of(pm, tol), compose(inverse(graph_of(Mat<S>(qn * pm), tol)), graph_of(qn, tol)));
}

/// Matrix of P_{M//N} as the Moore-Penrose inverse (P_{N⊥} P_M)†, computed
/// through relation_pinv. Only defined for complementary pairs.
template <Scalar S>
Mat<S> greville_pinv(const Subspace<S>& m, const Subspace<S>& n) {
  detail::same_ambient(m, n);
  if (!intersect(m, n).is_zero())
    throw PreconditionError("greville_pinv: M ∩ N != {0}");
  if (!sum(m, n).is_full()) throw PreconditionError("greville_pinv: M + N != whole space");
  const Mat<S> qn = identity<S>(n.ambient()) - n.projector();
  return relation_pinv(Mat<S>(qn * m.projector()), detail::joint_tol(m, n));
}

/// (I - P_N P_M)⁻¹ P_{N⊥}|_{M+N}.
template <Scalar S>
LinearRelation<S> ptak(const Subspace<S>& m, const Subspace<S>& n) {
  detail::same_ambient(m, n);
  const double tol = detail::joint_tol(m, n);
  const Index d = m.ambient();
  const Mat<S> gap = identity<S>(d) - n.projector() * m.projector();
  const Mat<S> qn = identity<S>(d) - n.projector();
  return compose(inverse(graph_of(gap, tol)), restrict(graph_of(qn, tol), sum(m, n)));
}

/// ker(I - P_N P_M), which coincides with M ∩ N.
template <Scalar S>
Subspace<S> ptak_kernel(const Subspace<S>& m, const Subspace<S>& n) {
  detail::same_ambient(m, n);
  const Mat<S> gap = identity<S>(m.ambient()) - n.projector() * m.projector();
  return Subspace<S>::from_orthonormal(linalg::null_space(gap, detail::joint_tol(m, n)),
                                       detail::joint_tol(m, n));
}

}  // namespace mvrel

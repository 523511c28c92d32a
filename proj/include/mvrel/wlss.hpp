#pragma once

#include <cmath>

#include "mvrel/projection.hpp"
#include "mvrel/relation.hpp"
#include "mvrel/subspace.hpp"

namespace mvrel {

/// Weighted least-squares data: minimize ||A x - b||_W with W psd, possibly singular.
template <Scalar S>
struct WlssProblem {
  Mat<S> w;
  Mat<S> a;
  Vec<S> b;

  void validate(double tol = kCompareTol) const {
    require_dims(w.rows() == w.cols(), "W must be square");
    require_dims(a.rows() == w.rows(), "A must have as many rows as W");
    require_dims(b.size() == w.rows(), "b must have length equal to the size of W");
    if (!linalg::is_psd(w, tol)) throw PreconditionError("W is not positive semidefinite");
  }
};

/// S^{⊥_W} = {x : <x, s>_W = 0 for all s ∈ S}, the nullspace of basis(S)* W.
template <Scalar S>
Subspace<S> w_companion(const Mat<S>& w, const Subspace<S>& s, double tol = kCompareTol) {
  require_dims(w.rows() == w.cols() && w.rows() == s.ambient(), "w_companion: size mismatch");
  if (!linalg::is_psd(w, tol)) throw PreconditionError("w_companion: W is not positive semidefinite");
  return Subspace<S>::from_orthonormal(
      linalg::null_space(Mat<S>(s.basis().adjoint() * w), s.tol() * linalg::op_norm(w)), s.tol());
}

/// P_{W, ran A} = P_{ran A, (ran A)^{⊥_W}}.
///
/// Its domain ran A + (ran A)^{⊥_W} is the whole space for every psd W:
/// with R = ran A, (R^{⊥_W})⊥ = W(R), and R ∩ W(R)⊥ = {s ∈ R : <Ws, s> = 0}
/// = R ∩ ker W, so (R + R^{⊥_W})⊥ = R⊥ ∩ W(R) = {0} because Ws ⊥ R forces
/// <Ws, s> = 0, hence Ws = 0.
template <Scalar S>
MvProjection<S> w_projection(const Mat<S>& w, const Mat<S>& a, double tol = kCompareTol) {
  require_dims(w.rows() == a.rows(), "w_projection: size mismatch");
  const Subspace<S> ran_a = range_of(a);
  return mv_projection(ran_a, w_companion(w, ran_a, tol));
}

/// The W-LSS set A⁻¹ P_{W, ran A} b, with the minimum-norm solution as point.
template <Scalar S>
AffineSet<S> solve(const WlssProblem<S>& p, double tol = kCompareTol) {
  p.validate(tol);
  const MvProjection<S> e = w_projection(p.w, p.a, tol);
  const LinearRelation<S> pullback = compose(inverse(graph_of(p.a)), e.rel);
  return apply(pullback, p.b, tol);
}

/// ||W^{1/2}(A x - b)||.
template <Scalar S>
double residual(const Mat<S>& w, const Mat<S>& a, const Vec<S>& x, const Vec<S>& b) {
  require_dims(a.cols() == x.size() && a.rows() == b.size() && w.rows() == b.size(),
               "residual: size mismatch");
  return (linalg::psd_sqrt(w) * (a * x - b)).norm();
}

/// min over y ∈ ran A of ||y - b||_W in closed form:
/// ||(I - P_{W^{1/2} ran A}) W^{1/2} b||.
template <Scalar S>
double optimal_value(const WlssProblem<S>& p) {
  const Mat<S> root = linalg::psd_sqrt(p.w);
  const Subspace<S> weighted = range_of(Mat<S>(root * p.a));
  const Vec<S> rb = root * p.b;
  return weighted.residual(rb);
}

}  // namespace mvrel

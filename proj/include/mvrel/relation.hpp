#pragma once

#include <string>
#include <utility>

#include "mvrel/linalg.hpp"
#include "mvrel/subspace.hpp"
#include "mvrel/types.hpp"

namespace mvrel {

/// A linear relation from S^n into S^m: a subspace of the product space,
/// input coordinates first, output coordinates last.
template <Scalar S>
class LinearRelation {
 public:
  LinearRelation() = default;

  LinearRelation(Index dim_in, Index dim_out, Subspace<S> graph)
      : in_(dim_in), out_(dim_out), graph_(std::move(graph)) {
    require_dims(graph_.ambient() == in_ + out_, "graph ambient dimension " +
                                                     std::to_string(graph_.ambient()) +
                                                     " != dim_in + dim_out");
  }

  /// Columns of `stacked` are the concatenated pairs (x; y).
  static LinearRelation from_generators(const Mat<S>& stacked, Index dim_in, Index dim_out,
                                        double tol = kRankTol) {
    require_dims(stacked.rows() == dim_in + dim_out,
                 "generator length " + std::to_string(stacked.rows()) + " != dim_in + dim_out");
    return LinearRelation(dim_in, dim_out, Subspace<S>::span(stacked, tol));
  }

  Index dim_in() const { return in_; }
  Index dim_out() const { return out_; }
  const Subspace<S>& graph() const { return graph_; }
  double tol() const { return graph_.tol(); }

  /// Input block of the orthonormal graph basis.
  auto input_block() const { return graph_.basis().topRows(in_); }
  /// Output block of the orthonormal graph basis.
  auto output_block() const { return graph_.basis().bottomRows(out_); }

 private:
  Index in_ = 0;
  Index out_ = 0;
  Subspace<S> graph_;
};

/// The set {y : (x, y) ∈ T} for a fixed x: empty, or point + directions.
template <Scalar S>
struct AffineSet {
  bool nonempty = false;
  Vec<S> point;
  Subspace<S> directions;

  static AffineSet empty(Index n) { return {false, Vec<S>::Zero(n), Subspace<S>::zero(n)}; }

  bool contains(const Vec<S>& y, double tol = kCompareTol) const {
    if (!nonempty) return false;
    return directions.residual(Vec<S>(y - point)) <= tol * std::max(1.0, y.norm());
  }
};

/// Equal as sets: same direction space and points differing by a direction.
template <Scalar S>
bool equal(const AffineSet<S>& a, const AffineSet<S>& b, double tol = kCompareTol) {
  if (a.nonempty != b.nonempty) return false;
  if (!a.nonempty) return true;
  return equal(a.directions, b.directions, tol) && a.contains(b.point, tol) &&
         b.contains(a.point, tol);
}

template <Scalar S>
struct Parts {
  Subspace<S> dom, ran, ker, mul;
  bool is_operator = false;
};

namespace detail {
template <Scalar S>
void same_shape(const LinearRelation<S>& t, const LinearRelation<S>& s) {
  require_dims(t.dim_in() == s.dim_in() && t.dim_out() == s.dim_out(),
               "relations have different shapes: (" + std::to_string(t.dim_in()) + "," +
                   std::to_string(t.dim_out()) + ") vs (" + std::to_string(s.dim_in()) + "," +
                   std::to_string(s.dim_out()) + ")");
}

template <Scalar S>
double joint_tol(const LinearRelation<S>& t, const LinearRelation<S>& s) {
  return std::max(t.tol(), s.tol());
}
}  // namespace detail

/// {(x, A x)}.
template <Scalar S>
LinearRelation<S> graph_of(const Mat<S>& a, double tol = kRankTol) {
  const Index n = a.cols();
  const Index m = a.rows();
  Mat<S> g(n + m, n);
  g.topRows(n).setIdentity();
  g.bottomRows(m) = a;
  return LinearRelation<S>(n, m, Subspace<S>::independent(g, tol));
}

template <Scalar S>
Subspace<S> domain(const LinearRelation<S>& t) {
  return Subspace<S>::span_unit(Mat<S>(t.input_block()), t.tol());
}

template <Scalar S>
Subspace<S> range(const LinearRelation<S>& t) {
  return Subspace<S>::span_unit(Mat<S>(t.output_block()), t.tol());
}

/// {x : (x, 0) ∈ T}. For an orthonormal graph basis G = [X; Y] and c in
/// null(Y), the vectors X c stay orthonormal.
template <Scalar S>
Subspace<S> kernel(const LinearRelation<S>& t) {
  const Mat<S> c = linalg::null_space(Mat<S>(t.output_block()), t.tol());
  return Subspace<S>::span_unit(Mat<S>(t.input_block() * c), t.tol());
}

/// {y : (0, y) ∈ T}.
template <Scalar S>
Subspace<S> multivalued_part(const LinearRelation<S>& t) {
  const Mat<S> c = linalg::null_space(Mat<S>(t.input_block()), t.tol());
  return Subspace<S>::span_unit(Mat<S>(t.output_block() * c), t.tol());
}

template <Scalar S>
Parts<S> parts(const LinearRelation<S>& t) {
  Parts<S> p{domain(t), range(t), kernel(t), multivalued_part(t), false};
  p.is_operator = p.mul.is_zero();
  return p;
}

template <Scalar S>
bool is_operator(const LinearRelation<S>& t) {
  return multivalued_part(t).is_zero();
}

/// T⁻¹: block swap of the graph, no arithmetic.
template <Scalar S>
LinearRelation<S> inverse(const LinearRelation<S>& t) {
  Mat<S> b(t.dim_in() + t.dim_out(), t.graph().dim());
  b.topRows(t.dim_out()) = t.output_block();
  b.bottomRows(t.dim_in()) = t.input_block();
  return LinearRelation<S>(t.dim_out(), t.dim_in(), Subspace<S>::from_orthonormal(std::move(b), t.tol()));
}

/// T* = {(x, y) : (y, -x) ⊥ T}, built from the orthogonal complement of the graph.
template <Scalar S>
LinearRelation<S> adjoint(const LinearRelation<S>& t) {
  const Subspace<S> perp = complement(t.graph());
  const Index n = t.dim_in();
  const Index m = t.dim_out();
  Mat<S> b(m + n, perp.dim());
  b.topRows(m) = -perp.basis().bottomRows(m);
  b.bottomRows(n) = perp.basis().topRows(n);
  return LinearRelation<S>(m, n, Subspace<S>::from_orthonormal(std::move(b), t.tol()));
}

/// Closure. Every finite-dimensional relation is closed, so this returns T.
template <Scalar S>
LinearRelation<S> closure(const LinearRelation<S>& t) {
  return t;
}

/// T +̂ S: sum of the graphs as subspaces.
template <Scalar S>
LinearRelation<S> cw_sum(const LinearRelation<S>& t, const LinearRelation<S>& s) {
  detail::same_shape(t, s);
  return LinearRelation<S>(t.dim_in(), t.dim_out(), sum(t.graph(), s.graph()));
}

struct SumFlags {
  bool direct = false;
  bool orthogonal = false;
};

template <Scalar S>
SumFlags sum_flags(const LinearRelation<S>& t, const LinearRelation<S>& s, double tol = kCompareTol) {
  detail::same_shape(t, s);
  SumFlags f;
  f.direct = intersect(t.graph(), s.graph()).is_zero();
  f.orthogonal =
      t.graph().is_zero() || s.graph().is_zero() ||
      linalg::op_norm(Mat<S>(t.graph().basis().adjoint() * s.graph().basis())) <= tol;
  return f;
}

/// T + S = {(x, y + z) : (x, y) ∈ T, (x, z) ∈ S}.
template <Scalar S>
LinearRelation<S> op_sum(const LinearRelation<S>& t, const LinearRelation<S>& s) {
  detail::same_shape(t, s);
  const double tol = detail::joint_tol(t, s);
  const Index kt = t.graph().dim();
  const Mat<S> c = linalg::null_space(linalg::hstack(Mat<S>(t.input_block()), Mat<S>(-s.input_block())), tol);
  Mat<S> g(t.dim_in() + t.dim_out(), c.cols());
  g.topRows(t.dim_in()) = t.input_block() * c.topRows(kt);
  g.bottomRows(t.dim_out()) = t.output_block() * c.topRows(kt) + s.output_block() * c.bottomRows(c.rows() - kt);
  return LinearRelation<S>(t.dim_in(), t.dim_out(), Subspace<S>::span_unit(g, tol));
}

/// RT = {(x, y) : (x, z) ∈ T, (z, y) ∈ R for some z}. The matching pairs of
/// graph coefficients are the nullspace of [Z_T, -Z_R]; the middle block is
/// then projected out.
template <Scalar S>
LinearRelation<S> compose(const LinearRelation<S>& r, const LinearRelation<S>& t) {
  require_dims(t.dim_out() == r.dim_in(), "compose: dim_out(T) = " + std::to_string(t.dim_out()) +
                                              " but dim_in(R) = " + std::to_string(r.dim_in()));
  const double tol = detail::joint_tol(r, t);
  const Index kt = t.graph().dim();
  const Mat<S> c = linalg::null_space(linalg::hstack(Mat<S>(t.output_block()), Mat<S>(-r.input_block())), tol);
  Mat<S> g(t.dim_in() + r.dim_out(), c.cols());
  g.topRows(t.dim_in()) = t.input_block() * c.topRows(kt);
  g.bottomRows(r.dim_out()) = r.output_block() * c.bottomRows(c.rows() - kt);
  return LinearRelation<S>(t.dim_in(), r.dim_out(), Subspace<S>::span_unit(g, tol));
}

/// T ∩ (M × K).
template <Scalar S>
LinearRelation<S> restrict(const LinearRelation<S>& t, const Subspace<S>& m) {
  require_dims(m.ambient() == t.dim_in(), "restrict: subspace ambient does not match dim_in");
  const Subspace<S> mc = complement(m);
  const Mat<S> c = linalg::null_space(Mat<S>(mc.basis().adjoint() * t.input_block()), t.tol());
  return LinearRelation<S>(t.dim_in(), t.dim_out(),
                           Subspace<S>::span_unit(Mat<S>(t.graph().basis() * c), t.tol()));
}

/// T(M) = {y : (x, y) ∈ T for some x ∈ M}.
template <Scalar S>
Subspace<S> image(const LinearRelation<S>& t, const Subspace<S>& m) {
  require_dims(m.ambient() == t.dim_in(), "image: subspace ambient does not match dim_in");
  const Subspace<S> mc = complement(m);
  const Mat<S> c = linalg::null_space(Mat<S>(mc.basis().adjoint() * t.input_block()), t.tol());
  return Subspace<S>::span_unit(Mat<S>(t.output_block() * c), t.tol());
}

/// Tx = T({x}) with the minimum-norm representative as point.
template <Scalar S>
AffineSet<S> apply(const LinearRelation<S>& t, const Vec<S>& x, double tol = kCompareTol) {
  require_dims(x.size() == t.dim_in(), "apply: vector length " + std::to_string(x.size()) +
                                           " != dim_in " + std::to_string(t.dim_in()));
  const Mat<S> xin = t.input_block();
  const Mat<S> xp = linalg::pinv(xin, t.tol());
  const Vec<S> c = xp * x;
  if ((xin * c - x).norm() > tol * std::max(1.0, x.norm())) return AffineSet<S>::empty(t.dim_out());
  const Subspace<S> mul = multivalued_part(t);
  Vec<S> y = t.output_block() * c;
  y -= mul.basis() * (mul.basis().adjoint() * y);
  return {true, std::move(y), mul};
}

template <Scalar S>
LinearRelation<S> identity_on(const Subspace<S>& m) {
  return LinearRelation<S>(m.ambient(), m.ambient(),
                           Subspace<S>::from_orthonormal(
                               linalg::vstack(m.basis(), m.basis()) / std::sqrt(2.0), m.tol()));
}

/// 0_M = M × {0}.
template <Scalar S>
LinearRelation<S> zero_on(const Subspace<S>& m) {
  return LinearRelation<S>(m.ambient(), m.ambient(), product(m, Subspace<S>::zero(m.ambient(), m.tol())));
}

/// The full product relation M × N.
template <Scalar S>
LinearRelation<S> product_of(const Subspace<S>& m, const Subspace<S>& n) {
  return LinearRelation<S>(m.ambient(), n.ambient(), product(m, n));
}

enum class Canonical { identity_on, zero_on, product_of };

template <Scalar S>
LinearRelation<S> canonical(Canonical kind, const Subspace<S>& m, const Subspace<S>* n = nullptr) {
  switch (kind) {
    case Canonical::identity_on: return identity_on(m);
    case Canonical::zero_on: return zero_on(m);
    case Canonical::product_of:
      if (n == nullptr) throw DimensionError("product_of needs a second subspace");
      return product_of(m, *n);
  }
  throw DimensionError("unknown canonical relation");
}

template <Scalar S>
Inclusion compare_rel(const LinearRelation<S>& t, const LinearRelation<S>& s, double tol = kCompareTol) {
  detail::same_shape(t, s);
  return compare(t.graph(), s.graph(), tol);
}

template <Scalar S>
bool equal(const LinearRelation<S>& t, const LinearRelation<S>& s, double tol = kCompareTol) {
  return compare_rel(t, s, tol) == Inclusion::equal;
}

template <Scalar S>
bool is_subset(const LinearRelation<S>& s, const LinearRelation<S>& t, double tol = kCompareTol) {
  detail::same_shape(t, s);
  return is_subset(s.graph(), t.graph(), tol);
}

/// S = T decided through the parts-based criterion:
/// S ⊆ T, dom T ⊆ dom S and mul T ⊆ mul S.
template <Scalar S>
bool equal_by_parts(const LinearRelation<S>& s, const LinearRelation<S>& t, double tol = kCompareTol) {
  detail::same_shape(t, s);
  return is_subset(s, t, tol) && is_subset(domain(t), domain(s), tol) &&
         is_subset(multivalued_part(t), multivalued_part(s), tol);
}

/// Graph distance (gap between graphs).
template <Scalar S>
double distance(const LinearRelation<S>& t, const LinearRelation<S>& s) {
  detail::same_shape(t, s);
  return distance(t.graph(), s.graph());
}

template <Scalar S>
struct OperatorPart {
  Mat<S> matrix;
  double norm = 0.0;
};

/// Matrix of T_m = Q T with Q the orthogonal projector onto (mul T)⊥,
/// extended by zero off dom T. Its norm is the continuity functional of T.
template <Scalar S>
OperatorPart<S> operator_part(const LinearRelation<S>& t) {
  const Subspace<S> mul = multivalued_part(t);
  const Mat<S> q = Mat<S>::Identity(t.dim_out(), t.dim_out()) - mul.projector();
  Mat<S> b = q * t.output_block() * linalg::pinv(Mat<S>(t.input_block()), t.tol());
  const double nrm = linalg::op_norm(b);
  return {std::move(b), nrm};
}

/// Matrix of an everywhere-defined operator relation; throws InvariantError otherwise.
template <Scalar S>
Mat<S> operator_matrix(const LinearRelation<S>& t, const char* what) {
  const Parts<S> p = parts(t);
  if (!p.is_operator || !p.dom.is_full())
    throw InvariantError(std::string(what) + ": relation is not an everywhere-defined operator (dim dom = " +
                         std::to_string(p.dom.dim()) + ", dim mul = " + std::to_string(p.mul.dim()) + ")");
  return operator_part(t).matrix;
}

/// Moore-Penrose inverse as the relation product P_{(ker A)⊥} A⁻¹ P_{(ker A*)⊥}.
template <Scalar S>
Mat<S> relation_pinv(const Mat<S>& a, double tol = kRankTol) {
  const Subspace<S> ker_perp = complement(kernel_of(a, tol));
  const Subspace<S> ker_adj_perp = complement(kernel_of(Mat<S>(a.adjoint()), tol));
  const LinearRelation<S> chain =
      compose(graph_of(ker_perp.projector(), tol),
              compose(inverse(graph_of(a, tol)), graph_of(ker_adj_perp.projector(), tol)));
  return operator_matrix(chain, "relation_pinv");
}

}  // namespace mvrel

#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "mvrel/linalg.hpp"
#include "mvrel/types.hpp"

namespace mvrel {

/// A linear subspace of S^n held as a column-orthonormal basis.
///
/// The zero subspace has an (n x 0) basis. Bases are not canonical; two
/// subspaces are compared through projectors / principal angles only.
template <Scalar S>
class Subspace {
 public:
  explicit Subspace(Index ambient = 0, double tol = kRankTol)
      : basis_(ambient, 0), tol_(tol) {}

  /// Span of the columns of `generators`; numerical rank decided by
  /// sigma > tol * sigma_max.
  static Subspace span(const Mat<S>& generators, double tol = kRankTol) {
    const double smax = linalg::op_norm(generators);
    return Subspace(linalg::orth(generators, tol * smax), tol, Trusted{});
  }

  /// Span of the columns of `generators` with the threshold tol * max(1, sigma_max).
  /// Used internally where generators are built from orthonormal bases,
  /// so that exact zeros polluted by rounding never count as directions.
  static Subspace span_unit(const Mat<S>& generators, double tol = kRankTol) {
    const double smax = linalg::op_norm(generators);
    return Subspace(linalg::orth(generators, tol * std::max(1.0, smax)), tol, Trusted{});
  }

  /// Columns known to be linearly independent (e.g. [I; A]); uses QR so no
  /// rank decision is made.
  static Subspace independent(const Mat<S>& generators, double tol = kRankTol) {
    Eigen::HouseholderQR<Mat<S>> qr(generators);
    Mat<S> q = qr.householderQ() * Mat<S>::Identity(generators.rows(), generators.cols());
    return Subspace(std::move(q), tol, Trusted{});
  }

  /// Basis already column-orthonormal.
  static Subspace from_orthonormal(Mat<S> basis, double tol = kRankTol) {
    return Subspace(std::move(basis), tol, Trusted{});
  }

  static Subspace full(Index n, double tol = kRankTol) {
    return Subspace(Mat<S>::Identity(n, n), tol, Trusted{});
  }

  static Subspace zero(Index n, double tol = kRankTol) { return Subspace(n, tol); }

  Index ambient() const { return basis_.rows(); }
  Index dim() const { return basis_.cols(); }
  bool is_zero() const { return dim() == 0; }
  bool is_full() const { return dim() == ambient(); }
  const Mat<S>& basis() const { return basis_; }
  double tol() const { return tol_; }

  Mat<S> projector() const { return basis_ * basis_.adjoint(); }

  /// Distance from x to the subspace.
  double residual(const Vec<S>& x) const {
    require_dims(x.size() == ambient(), "vector length does not match subspace ambient dimension");
    return (x - basis_ * (basis_.adjoint() * x)).norm();
  }

  bool contains(const Vec<S>& x, double tol = kCompareTol) const {
    return residual(x) <= tol * std::max(1.0, x.norm());
  }

 private:
  struct Trusted {};
  Subspace(Mat<S> basis, double tol, Trusted) : basis_(std::move(basis)), tol_(tol) {}

  Mat<S> basis_;
  double tol_;
};

enum class Inclusion { equal, strict_subset, strict_superset, incomparable };

inline const char* to_string(Inclusion c) {
  switch (c) {
    case Inclusion::equal: return "equal";
    case Inclusion::strict_subset: return "strict_subset";
    case Inclusion::strict_superset: return "strict_superset";
    case Inclusion::incomparable: return "incomparable";
  }
  return "?";
}

namespace detail {
template <Scalar S>
void same_ambient(const Subspace<S>& m, const Subspace<S>& n) {
  require_dims(m.ambient() == n.ambient(),
               "ambient dimension mismatch: " + std::to_string(m.ambient()) + " vs " +
                   std::to_string(n.ambient()));
}

template <Scalar S>
double joint_tol(const Subspace<S>& m, const Subspace<S>& n) {
  return std::max(m.tol(), n.tol());
}
}  // namespace detail

template <Scalar S>
Subspace<S> span(const std::vector<Vec<S>>& vectors, Index ambient, double tol = kRankTol) {
  Mat<S> g(ambient, static_cast<Index>(vectors.size()));
  for (std::size_t j = 0; j < vectors.size(); ++j) {
    require_dims(vectors[j].size() == ambient, "generator " + std::to_string(j) +
                                                   " has length " + std::to_string(vectors[j].size()) +
                                                   ", expected " + std::to_string(ambient));
    g.col(static_cast<Index>(j)) = vectors[j];
  }
  return Subspace<S>::span(g, tol);
}

template <Scalar S>
Subspace<S> sum(const Subspace<S>& m, const Subspace<S>& n) {
  detail::same_ambient(m, n);
  return Subspace<S>::span_unit(linalg::hstack(m.basis(), n.basis()), detail::joint_tol(m, n));
}

/// Orthogonal complement. Exact: taken from the full SVD of the basis.
template <Scalar S>
Subspace<S> complement(const Subspace<S>& m) {
  const Index n = m.ambient();
  if (m.is_zero()) return Subspace<S>::full(n, m.tol());
  if (m.is_full()) return Subspace<S>::zero(n, m.tol());
  Eigen::JacobiSVD<Mat<S>> svd(m.basis(), Eigen::ComputeFullU);
  return Subspace<S>::from_orthonormal(svd.matrixU().rightCols(n - m.dim()), m.tol());
}

/// M ∩ N computed as (M⊥ + N⊥)⊥.
template <Scalar S>
Subspace<S> intersect(const Subspace<S>& m, const Subspace<S>& n) {
  detail::same_ambient(m, n);
  if (m.is_zero() || n.is_zero()) return Subspace<S>::zero(m.ambient(), detail::joint_tol(m, n));
  return complement(sum(complement(m), complement(n)));
}

/// M ⊖ N = M ∩ N⊥ (total; callers enforce N ⊆ M where required).
template <Scalar S>
Subspace<S> minus(const Subspace<S>& m, const Subspace<S>& n) {
  detail::same_ambient(m, n);
  return intersect(m, complement(n));
}

/// sin of the largest principal angle from M into N, i.e. ||(I - P_N) Q_M||.
template <Scalar S>
double containment_residual(const Subspace<S>& m, const Subspace<S>& n) {
  detail::same_ambient(m, n);
  if (m.is_zero()) return 0.0;
  const Mat<S> r = m.basis() - n.basis() * (n.basis().adjoint() * m.basis());
  return linalg::op_norm(r);
}

template <Scalar S>
bool is_subset(const Subspace<S>& m, const Subspace<S>& n, double tol = kCompareTol) {
  return m.dim() <= n.dim() && containment_residual(m, n) <= tol;
}

template <Scalar S>
Inclusion compare(const Subspace<S>& m, const Subspace<S>& n, double tol = kCompareTol) {
  detail::same_ambient(m, n);
  const bool mn = is_subset(m, n, tol);
  const bool nm = is_subset(n, m, tol);
  if (mn && nm) return Inclusion::equal;
  if (mn) return Inclusion::strict_subset;
  if (nm) return Inclusion::strict_superset;
  return Inclusion::incomparable;
}

template <Scalar S>
bool equal(const Subspace<S>& m, const Subspace<S>& n, double tol = kCompareTol) {
  return compare(m, n, tol) == Inclusion::equal;
}

/// ||P_M - P_N|| when dimensions agree, 1 otherwise (the gap metric).
template <Scalar S>
double distance(const Subspace<S>& m, const Subspace<S>& n) {
  detail::same_ambient(m, n);
  if (m.dim() != n.dim()) return 1.0;
  return linalg::op_norm(Mat<S>(m.projector() - n.projector()));
}

template <Scalar S>
Mat<S> projector(const Subspace<S>& m) {
  return m.projector();
}

/// Cosine of the Friedrichs angle: sup |<x,y>| over unit x ∈ M ⊖ (M∩N),
/// y ∈ N ⊖ (M∩N). Zero when either reduced space is trivial.
template <Scalar S>
double friedrichs_cosine(const Subspace<S>& m, const Subspace<S>& n) {
  const Subspace<S> common = intersect(m, n);
  const Subspace<S> mr = minus(m, common);
  const Subspace<S> nr = minus(n, common);
  if (mr.is_zero() || nr.is_zero()) return 0.0;
  return std::min(1.0, linalg::op_norm(Mat<S>(mr.basis().adjoint() * nr.basis())));
}

/// Direct sum M × N ⊆ S^(m+n) (block-diagonal basis).
template <Scalar S>
Subspace<S> product(const Subspace<S>& m, const Subspace<S>& n) {
  Mat<S> b = Mat<S>::Zero(m.ambient() + n.ambient(), m.dim() + n.dim());
  b.topLeftCorner(m.ambient(), m.dim()) = m.basis();
  b.bottomRightCorner(n.ambient(), n.dim()) = n.basis();
  return Subspace<S>::from_orthonormal(std::move(b), detail::joint_tol(m, n));
}

/// A(M) for a matrix A.
template <Scalar S>
Subspace<S> image(const Mat<S>& a, const Subspace<S>& m) {
  require_dims(a.cols() == m.ambient(), "matrix columns do not match subspace ambient dimension");
  const double scale = std::max(1.0, linalg::op_norm(a));
  return Subspace<S>::from_orthonormal(linalg::orth(Mat<S>(a * m.basis()), m.tol() * scale), m.tol());
}

/// A⁻¹(M) = {x : Ax ∈ M} for a matrix A, via the nullspace of (I - P_M) A.
template <Scalar S>
Subspace<S> preimage(const Mat<S>& a, const Subspace<S>& m) {
  require_dims(a.rows() == m.ambient(), "matrix rows do not match subspace ambient dimension");
  const Subspace<S> mc = complement(m);
  const double scale = std::max(1.0, linalg::op_norm(a));
  Mat<S> constraint = mc.basis().adjoint() * a;
  return Subspace<S>::from_orthonormal(linalg::null_space(constraint, m.tol() * scale), m.tol());
}

/// Range of a matrix, rank relative to its norm.
template <Scalar S>
Subspace<S> range_of(const Mat<S>& a, double tol = kRankTol) {
  return Subspace<S>::span(a, tol);
}

/// Kernel of a matrix, rank relative to its norm.
template <Scalar S>
Subspace<S> kernel_of(const Mat<S>& a, double tol = kRankTol) {
  return Subspace<S>::from_orthonormal(linalg::null_space(a, tol * linalg::op_norm(a)), tol);
}

}  // namespace mvrel

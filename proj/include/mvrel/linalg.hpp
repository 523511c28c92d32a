#pragma once

#include <algorithm>
#include <cmath>

#include "mvrel/types.hpp"

// Thin SVD / eigen helpers shared by every module. All rank decisions go
// through a caller-supplied absolute threshold on singular values.
namespace mvrel::linalg {

template <Scalar S>
double op_norm(const Mat<S>& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<Mat<S>> svd(a);
  return svd.singularValues()(0);
}

/// Orthonormal basis (columns) of the column span of g, keeping singular
/// directions with sigma > threshold.
template <Scalar S>
Mat<S> orth(const Mat<S>& g, double threshold) {
  if (g.cols() == 0 || g.rows() == 0) return Mat<S>(g.rows(), 0);
  Eigen::JacobiSVD<Mat<S>> svd(g, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  Index r = 0;
  while (r < sv.size() && sv(r) > threshold) ++r;
  return svd.matrixU().leftCols(r);
}

/// Orthonormal basis of {c : a c = 0} up to threshold.
template <Scalar S>
Mat<S> null_space(const Mat<S>& a, double threshold) {
  const Index n = a.cols();
  if (n == 0) return Mat<S>(0, 0);
  if (a.rows() == 0) return Mat<S>::Identity(n, n);
  Eigen::JacobiSVD<Mat<S>> svd(a, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  Index r = 0;
  while (r < sv.size() && sv(r) > threshold) ++r;
  return svd.matrixV().rightCols(n - r);
}

template <Scalar S>
Mat<S> pinv(const Mat<S>& a, double threshold) {
  if (a.size() == 0) return Mat<S>::Zero(a.cols(), a.rows());
  Eigen::JacobiSVD<Mat<S>> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  Mat<S> out = Mat<S>::Zero(a.cols(), a.rows());
  for (Index i = 0; i < sv.size(); ++i) {
    if (sv(i) <= threshold) break;
    out += (svd.matrixV().col(i) / sv(i)) * svd.matrixU().col(i).adjoint();
  }
  return out;
}

/// Pseudo-inverse with the threshold relative to the largest singular value.
template <Scalar S>
Mat<S> pinv_rel(const Mat<S>& a, double rel_tol) {
  return pinv(a, rel_tol * op_norm(a));
}

template <Scalar S>
Mat<S> hermitian_part(const Mat<S>& h) {
  return (h + h.adjoint()) / 2.0;
}

/// Positive semidefinite square root; eigenvalues below
/// max(rel_tol * lambda_max, abs_floor) (and all negative ones) are clipped
/// to zero first.
template <Scalar S>
Mat<S> psd_sqrt(const Mat<S>& h, double rel_tol = kRankTol, double abs_floor = 0.0) {
  const Index n = h.rows();
  if (n == 0) return h;
  Eigen::SelfAdjointEigenSolver<Mat<S>> es(hermitian_part(h));
  Eigen::VectorXd ev = es.eigenvalues();
  const double lmax = std::max(ev.maxCoeff(), 0.0);
  const double cut = std::max(rel_tol * lmax, abs_floor);
  for (Index i = 0; i < n; ++i) ev(i) = ev(i) > cut ? std::sqrt(ev(i)) : 0.0;
  const Mat<S>& v = es.eigenvectors();
  return v * ev.cast<S>().asDiagonal() * v.adjoint();
}

template <Scalar S>
double min_eigenvalue(const Mat<S>& h) {
  if (h.rows() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Mat<S>> es(hermitian_part(h), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

template <Scalar S>
double max_eigenvalue(const Mat<S>& h) {
  if (h.rows() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Mat<S>> es(hermitian_part(h), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(h.rows() - 1);
}

/// Hermitian with no eigenvalue below -tol * max(1, ||h||).
template <Scalar S>
bool is_psd(const Mat<S>& h, double tol = kCompareTol) {
  if (h.rows() != h.cols()) return false;
  const double scale = std::max(1.0, op_norm(h));
  if ((h - h.adjoint()).norm() > tol * scale) return false;
  return min_eigenvalue(h) >= -tol * scale;
}

template <Scalar S>
Mat<S> hstack(const Mat<S>& a, const Mat<S>& b) {
  Mat<S> out(a.rows(), a.cols() + b.cols());
  out.leftCols(a.cols()) = a;
  out.rightCols(b.cols()) = b;
  return out;
}

template <Scalar S>
Mat<S> vstack(const Mat<S>& a, const Mat<S>& b) {
  Mat<S> out(a.rows() + b.rows(), a.cols());
  out.topRows(a.rows()) = a;
  out.bottomRows(b.rows()) = b;
  return out;
}

}  // namespace mvrel::linalg

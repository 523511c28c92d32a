#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <string_view>

#include "mvrel/relation.hpp"
#include "mvrel/subspace.hpp"

namespace mvrel {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Stream seed for one trial: a function of (seed, tag, index) only, so
/// trials can be evaluated in any order.
inline std::uint64_t trial_seed(std::uint64_t seed, std::string_view tag, std::uint64_t index) {
  std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
  for (char c : tag) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return splitmix64(splitmix64(seed ^ h) + index);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  template <Scalar S>
  S gaussian() {
    if constexpr (std::same_as<S, double>) {
      return normal_(engine_);
    } else {
      const double re = normal_(engine_);
      const double im = normal_(engine_);
      return {re / std::sqrt(2.0), im / std::sqrt(2.0)};
    }
  }

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }

  /// Uniform integer in [lo, hi].
  Index integer(Index lo, Index hi) {
    return std::uniform_int_distribution<Index>(lo, std::max(lo, hi))(engine_);
  }

  bool coin(double p = 0.5) { return uniform(0.0, 1.0) < p; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

template <Scalar S>
Mat<S> gaussian_matrix(Rng& rng, Index rows, Index cols) {
  Mat<S> g(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) g(i, j) = rng.gaussian<S>();
  return g;
}

template <Scalar S>
Vec<S> gaussian_vector(Rng& rng, Index n) {
  return gaussian_matrix<S>(rng, n, 1).col(0);
}

template <Scalar S>
Subspace<S> random_subspace(Rng& rng, Index ambient, Index dim) {
  if (dim < 0 || dim > ambient) throw DimensionError("random_subspace: dim out of range");
  if (dim == 0) return Subspace<S>::zero(ambient);
  return Subspace<S>::independent(gaussian_matrix<S>(rng, ambient, dim));
}

/// Orthonormal basis of the span of `dim` i.i.d. standard Gaussian vectors.
template <Scalar S>
Subspace<S> random_subspace(std::uint64_t seed, Index ambient, Index dim) {
  Rng rng(seed);
  return random_subspace<S>(rng, ambient, dim);
}

/// Rank-r matrix of the given shape (product of Gaussian factors).
template <Scalar S>
Mat<S> random_rank_matrix(Rng& rng, Index rows, Index cols, Index rank) {
  return gaussian_matrix<S>(rng, rows, rank) * gaussian_matrix<S>(rng, rank, cols);
}

template <Scalar S>
struct SubspacePair {
  Subspace<S> m, n;
};

/// Pairs with a controlled common part: M = span(C, X), N = span(C, Y)
/// with C, X, Y Gaussian. Occasionally degenerate (M = N, M ⊆ N, zero).
template <Scalar S>
SubspacePair<S> random_pair(Rng& rng, Index ambient) {
  const Index shape = rng.integer(0, 9);
  if (shape == 0) {
    Subspace<S> m = random_subspace<S>(rng, ambient, rng.integer(0, ambient));
    return {m, m};
  }
  if (shape == 1) {
    const Index dn = rng.integer(0, ambient);
    const Mat<S> nb = gaussian_matrix<S>(rng, ambient, dn);
    const Index dm = rng.integer(0, dn);
    Subspace<S> n = Subspace<S>::span(nb);
    Subspace<S> m = Subspace<S>::span(Mat<S>(nb * gaussian_matrix<S>(rng, dn, dm)));
    if (rng.coin()) std::swap(m, n);
    return {m, n};
  }
  const Index common = rng.integer(0, ambient / 2);
  const Index extra_m = rng.integer(0, ambient - common);
  const Index extra_n = rng.integer(0, ambient - common - (rng.coin(0.7) ? extra_m : 0));
  const Mat<S> c = gaussian_matrix<S>(rng, ambient, common);
  const Mat<S> mx = linalg::hstack(c, gaussian_matrix<S>(rng, ambient, extra_m));
  const Mat<S> ny = linalg::hstack(c, gaussian_matrix<S>(rng, ambient, std::max<Index>(0, extra_n)));
  return {Subspace<S>::span(mx), Subspace<S>::span(ny)};
}

/// Relation built from operator-like pairs (x, y), kernel pairs (x, 0) and
/// multivalued pairs (0, y), so that dom, ker and mul vary across samples.
template <Scalar S>
LinearRelation<S> random_relation(Rng& rng, Index dim_in, Index dim_out) {
  const Index total = dim_in + dim_out;
  const Index n_op = rng.integer(0, std::min(dim_in, total));
  const Index n_ker = rng.integer(0, dim_in - n_op);
  const Index n_mul = rng.integer(0, std::min<Index>(dim_out, total - n_op - n_ker));
  Mat<S> g = Mat<S>::Zero(total, n_op + n_ker + n_mul);
  g.topLeftCorner(dim_in, n_op) = gaussian_matrix<S>(rng, dim_in, n_op);
  g.bottomLeftCorner(dim_out, n_op) = gaussian_matrix<S>(rng, dim_out, n_op);
  g.block(0, n_op, dim_in, n_ker) = gaussian_matrix<S>(rng, dim_in, n_ker);
  g.bottomRightCorner(dim_out, n_mul) = gaussian_matrix<S>(rng, dim_out, n_mul);
  return LinearRelation<S>::from_generators(g, dim_in, dim_out);
}

template <Scalar S>
struct OperatorPair {
  Mat<S> a, b;
};

/// Square A, B whose ranges share a Gaussian common part; ranks vary from
/// zero to full.
template <Scalar S>
OperatorPair<S> random_operator_pair(Rng& rng, Index n) {
  const Index rc = rng.integer(0, n / 2);
  const Index ra = rng.integer(0, n - rc);
  const Index rb = rng.integer(0, n - rc);
  const Mat<S> c = gaussian_matrix<S>(rng, n, rc);
  const Mat<S> ga = linalg::hstack(c, gaussian_matrix<S>(rng, n, ra));
  const Mat<S> gb = linalg::hstack(c, gaussian_matrix<S>(rng, n, rb));
  return {ga * gaussian_matrix<S>(rng, ga.cols(), n), gb * gaussian_matrix<S>(rng, gb.cols(), n)};
}

/// Positive semidefinite G G* with G of shape n x rank.
template <Scalar S>
Mat<S> random_psd(Rng& rng, Index n, Index rank) {
  const Mat<S> g = gaussian_matrix<S>(rng, n, rank);
  return g * g.adjoint();
}

/// U diag(sigma) V* with unitary U, V and sigma drawn from a mixture of
/// ones, zeros and values in (0, 1); max sigma = 1 when `isometry_like`.
template <Scalar S>
Mat<S> random_contraction(Rng& rng, Index n, bool isometry_like) {
  const Mat<S> u = random_subspace<S>(rng, n, n).basis();
  const Mat<S> v = random_subspace<S>(rng, n, n).basis();
  Eigen::VectorXd sigma(n);
  for (Index i = 0; i < n; ++i) {
    const Index kind = rng.integer(0, 3);
    sigma(i) = kind == 0 ? 0.0 : kind == 1 ? 1.0 : rng.uniform(0.05, 0.95);
  }
  if (!isometry_like) {
    const Mat<S> g = gaussian_matrix<S>(rng, n, n);
    if (rng.coin()) return g / (1.01 * linalg::op_norm(g));
    for (Index i = 0; i < n; ++i)
      if (sigma(i) == 1.0) sigma(i) = rng.uniform(0.05, 0.95);
  } else if (n > 0) {
    sigma(rng.integer(0, n - 1)) = 1.0;
  }
  return u * sigma.cast<S>().asDiagonal() * v.adjoint();
}

}  // namespace mvrel

#pragma once

#include <complex>
#include <concepts>
#include <stdexcept>
#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace mvrel {

using Index = Eigen::Index;
using Complex = std::complex<double>;

template <class S>
concept Scalar = std::same_as<S, double> || std::same_as<S, Complex>;

template <Scalar S>
using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <Scalar S>
using Vec = Eigen::Matrix<S, Eigen::Dynamic, 1>;

enum class ScalarKind { real, complex };

template <Scalar S>
constexpr ScalarKind scalar_kind() {
  return std::same_as<S, double> ? ScalarKind::real : ScalarKind::complex;
}

inline std::string_view to_string(ScalarKind k) {
  return k == ScalarKind::real ? "real" : "complex";
}

// Relative rank tolerance carried by every Subspace built without an
// explicit one. Composite relation computations chain several SVDs, so
// the noise floor sits well above n * eps.
inline constexpr double kRankTol = 1e-10;

// Default tolerance for containment / equality decisions.
inline constexpr double kCompareTol = 1e-8;

/// Thrown for inconsistent sizes between operands or inputs.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when a mathematical hypothesis of an operation does not hold
/// (weight not psd, operand not a contraction, pair not complementary...).
class PreconditionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Thrown when an identity that must hold by construction fails
/// numerically. Indicates a rank-decision bug, never bad input.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline void require_dims(bool ok, const std::string& what) {
  if (!ok) throw DimensionError(what);
}

/// <x, y>, linear in the first argument.
template <Scalar S>
S inner(const Vec<S>& x, const Vec<S>& y) {
  return y.dot(x);
}

}  // namespace mvrel

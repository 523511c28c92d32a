#pragma once

#include <string>

#include <json.hpp>

#include "mvrel/relation.hpp"
#include "mvrel/subspace.hpp"

// JSON wire formats.
//
//   matrix    [[row...], ...]; complex entries are [re, im] pairs
//   subspace  {"ambient": n, "scalar": "real"|"complex", "generators": [[...], ...]}
//   relation  {"dim_in": n, "dim_out": m, "scalar": ..., "generators": [[x..., y...], ...]}
//
// Generators are rows; orthonormalization happens on load.
namespace mvrel::io {

using json = nlohmann::json;

class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline ScalarKind parse_kind(const json& j, ScalarKind fallback = ScalarKind::real) {
  if (!j.is_object() || !j.contains("scalar")) return fallback;
  const auto& s = j.at("scalar");
  if (s == "real") return ScalarKind::real;
  if (s == "complex") return ScalarKind::complex;
  throw ParseError("field 'scalar' must be \"real\" or \"complex\"");
}

template <Scalar S>
json scalar_to_json(S v) {
  if constexpr (std::same_as<S, double>) {
    return v;
  } else {
    return json::array({v.real(), v.imag()});
  }
}

template <Scalar S>
S scalar_from_json(const json& j, const std::string& field) {
  if (j.is_number()) return S(j.get<double>());
  if constexpr (std::same_as<S, Complex>) {
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
      return {j[0].get<double>(), j[1].get<double>()};
  }
  throw ParseError("field '" + field + "': expected a number" +
                   (std::same_as<S, Complex> ? std::string(" or [re, im]") : std::string()));
}

template <Scalar S>
json vector_to_json(const Vec<S>& v) {
  json out = json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(scalar_to_json<S>(v(i)));
  return out;
}

template <Scalar S>
Vec<S> vector_from_json(const json& j, const std::string& field) {
  if (!j.is_array()) throw ParseError("field '" + field + "': expected an array");
  Vec<S> v(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i)
    v(static_cast<Index>(i)) = scalar_from_json<S>(j[i], field + "[" + std::to_string(i) + "]");
  return v;
}

/// Rows of the matrix.
template <Scalar S>
json matrix_to_json(const Mat<S>& a) {
  json out = json::array();
  for (Index i = 0; i < a.rows(); ++i) out.push_back(vector_to_json<S>(Vec<S>(a.row(i).transpose())));
  return out;
}

/// `cols` is required to size matrices with zero rows.
template <Scalar S>
Mat<S> matrix_from_json(const json& j, const std::string& field, Index cols = -1) {
  if (!j.is_array()) throw ParseError("field '" + field + "': expected an array of rows");
  const Index rows = static_cast<Index>(j.size());
  if (rows == 0) return Mat<S>(0, std::max<Index>(cols, 0));
  const Index c = static_cast<Index>(j[0].is_array() ? j[0].size() : 0);
  if (cols >= 0 && c != cols)
    throw ParseError("field '" + field + "': rows have length " + std::to_string(c) + ", expected " +
                     std::to_string(cols));
  Mat<S> a(rows, c);
  for (Index i = 0; i < rows; ++i) {
    const std::string row_field = field + "[" + std::to_string(i) + "]";
    const Vec<S> r = vector_from_json<S>(j[static_cast<std::size_t>(i)], row_field);
    if (r.size() != c) throw ParseError("field '" + row_field + "': ragged row");
    a.row(i) = r.transpose();
  }
  return a;
}

template <Scalar S>
json subspace_to_json(const Subspace<S>& m) {
  return {{"ambient", m.ambient()},
          {"scalar", std::string(to_string(scalar_kind<S>()))},
          {"dim", m.dim()},
          {"generators", matrix_to_json<S>(Mat<S>(m.basis().transpose()))}};
}

template <Scalar S>
Subspace<S> subspace_from_json(const json& j, double tol = kRankTol) {
  if (!j.is_object() || !j.contains("ambient") || !j.at("ambient").is_number_integer())
    throw ParseError("field 'ambient': missing or not an integer");
  const Index n = j.at("ambient").get<Index>();
  if (n < 0) throw ParseError("field 'ambient': negative");
  if (!j.contains("generators")) throw ParseError("field 'generators': missing");
  const Mat<S> rows = matrix_from_json<S>(j.at("generators"), "generators", n);
  return Subspace<S>::span(Mat<S>(rows.transpose()), tol);
}

template <Scalar S>
json relation_to_json(const LinearRelation<S>& t) {
  return {{"dim_in", t.dim_in()},
          {"dim_out", t.dim_out()},
          {"scalar", std::string(to_string(scalar_kind<S>()))},
          {"dim", t.graph().dim()},
          {"generators", matrix_to_json<S>(Mat<S>(t.graph().basis().transpose()))}};
}

template <Scalar S>
LinearRelation<S> relation_from_json(const json& j, double tol = kRankTol) {
  for (const char* key : {"dim_in", "dim_out"})
    if (!j.is_object() || !j.contains(key) || !j.at(key).is_number_integer())
      throw ParseError(std::string("field '") + key + "': missing or not an integer");
  const Index n = j.at("dim_in").get<Index>();
  const Index m = j.at("dim_out").get<Index>();
  if (n < 0 || m < 0) throw ParseError("relation dimensions must be non-negative");
  if (!j.contains("generators")) throw ParseError("field 'generators': missing");
  const Mat<S> rows = matrix_from_json<S>(j.at("generators"), "generators", n + m);
  return LinearRelation<S>::from_generators(Mat<S>(rows.transpose()), n, m, tol);
}

template <Scalar S>
json affine_to_json(const AffineSet<S>& a) {
  json out{{"nonempty", a.nonempty}};
  if (a.nonempty) {
    out["point"] = vector_to_json<S>(a.point);
    out["directions"] = matrix_to_json<S>(Mat<S>(a.directions.basis().transpose()));
    out["dim"] = a.directions.dim();
  }
  return out;
}

}  // namespace mvrel::io

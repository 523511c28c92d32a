#pragma once

#include <type_traits>

#include "mvrel/verify.hpp"

namespace mvrel::verify::detail {

template <class S>
using tag_t = std::type_identity<S>;

/// Wraps scalar-generic generate/check callables; both receive a
/// std::type_identity<S> first.
template <class Gen, class Chk>
Suite make_suite(std::string tag, std::string summary, Gen gen, Chk chk) {
  Suite s;
  s.tag = std::move(tag);
  s.summary = std::move(summary);
  s.generate = [gen](Rng& rng, const VerifyConfig& c, std::uint64_t index) -> json {
    if (c.scalar == ScalarKind::complex) return gen(tag_t<Complex>{}, rng, c, index);
    return gen(tag_t<double>{}, rng, c, index);
  };
  s.check = [chk](const json& inst, const VerifyConfig& c) -> TrialResult {
    Checker ck;
    if (io::parse_kind(inst, c.scalar) == ScalarKind::complex)
      chk(tag_t<Complex>{}, inst, c, ck);
    else
      chk(tag_t<double>{}, inst, c, ck);
    return ck.take();
  };
  return s;
}

template <Scalar S>
Subspace<S> get_sub(const json& j, const char* key) {
  return io::subspace_from_json<S>(j.at(key));
}

template <Scalar S>
Mat<S> get_mat(const json& j, const char* key, Index cols) {
  return io::matrix_from_json<S>(j.at(key), key, cols);
}

template <Scalar S>
Vec<S> get_vec(const json& j, const char* key) {
  return io::vector_from_json<S>(j.at(key), key);
}

template <Scalar S>
LinearRelation<S> get_rel(const json& j, const char* key) {
  return io::relation_from_json<S>(j.at(key));
}

inline Index get_n(const json& j) { return j.at("n").get<Index>(); }

template <Scalar S>
json pair_instance(const SubspacePair<S>& p) {
  return {{"n", p.m.ambient()}, {"m", io::subspace_to_json(p.m)}, {"nn", io::subspace_to_json(p.n)}};
}

}  // namespace mvrel::verify::detail

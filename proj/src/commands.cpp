#include "mvrel/commands.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "mvrel/decomposition.hpp"
#include "mvrel/semiclosed.hpp"
#include "mvrel/verify.hpp"
#include "mvrel/wlss.hpp"

namespace mvrel {

namespace {

using io::json;

struct Globals {
  double tol = kCompareTol;
  std::string scalar;  // empty: from the inputs
  std::uint64_t seed = 0;
  int trials = 200;
  Index max_dim = 8;
  std::vector<std::string> suites;
};

/// Inline JSON when the argument starts with '[' or '{', otherwise a path.
json load(const std::string& arg) {
  const auto first = arg.find_first_not_of(" \t\n");
  std::string text;
  if (first != std::string::npos && (arg[first] == '[' || arg[first] == '{')) {
    text = arg;
  } else {
    std::ifstream in(arg);
    if (!in) throw io::ParseError("cannot open '" + arg + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw io::ParseError("'" + arg + "': " + e.what());
  }
}

template <Scalar S>
Mat<S> as_matrix(const json& j) {
  if (j.is_object()) {
    if (!j.contains("matrix")) throw io::ParseError("field 'matrix': missing");
    return io::matrix_from_json<S>(j.at("matrix"), "matrix");
  }
  return io::matrix_from_json<S>(j, "matrix");
}

template <Scalar S>
Vec<S> as_vector(const json& j) {
  if (j.is_object()) {
    if (!j.contains("vector")) throw io::ParseError("field 'vector': missing");
    return io::vector_from_json<S>(j.at("vector"), "vector");
  }
  return io::vector_from_json<S>(j, "vector");
}

/// Subspace object, or a plain array whose rows are generators.
template <Scalar S>
Subspace<S> as_subspace(const json& j) {
  if (j.is_object()) return io::subspace_from_json<S>(j);
  const Mat<S> rows = io::matrix_from_json<S>(j, "generators");
  return Subspace<S>::span(Mat<S>(rows.transpose()));
}

/// Relation object, or a plain matrix taken as its graph.
template <Scalar S>
LinearRelation<S> as_relation(const json& j) {
  if (j.is_object() && j.contains("dim_in")) return io::relation_from_json<S>(j);
  return graph_of(as_matrix<S>(j));
}

template <Scalar S>
json parts_json(const LinearRelation<S>& t) {
  const Parts<S> p = parts(t);
  return {{"dom", io::subspace_to_json(p.dom)},
          {"ran", io::subspace_to_json(p.ran)},
          {"ker", io::subspace_to_json(p.ker)},
          {"mul", io::subspace_to_json(p.mul)},
          {"is_operator", p.is_operator}};
}

json classify_json(const ClassifyReport& r) {
  auto cont = [](const Containment& c) { return json{{"holds", c.holds}, {"residual", c.residual}}; };
  return {{"kind", to_string(r.kind)},
          {"ran_in_dom", cont(r.ran_in_dom)},
          {"identity_on_ran", cont(r.identity_on_ran)},
          {"ran_in_ker", cont(r.ran_in_ker)},
          {"idempotent", r.idempotent},
          {"nilpotent_square", r.nilpotent_square}};
}

template <Scalar S>
json decomposition_json(const Decomposition<S>& d) {
  return {{"kind", d.kind == DecompositionKind::componentwise ? "componentwise" : "range_orthogonal"},
          {"operator_term", io::relation_to_json(d.operator_term)},
          {"residual_term", io::relation_to_json(d.residual_term)}};
}

void need(const std::vector<json>& in, std::size_t n, const std::string& what) {
  if (in.size() != n)
    throw io::ParseError(what + " expects " + std::to_string(n) + " input(s), got " + std::to_string(in.size()));
}

template <Scalar S>
json relation_cmd(const std::string& op, const std::vector<json>& in, const Globals& g) {
  if (op == "compose") {
    need(in, 2, "relation compose");
    return io::relation_to_json(compose(as_relation<S>(in[0]), as_relation<S>(in[1])));
  }
  if (op == "inverse") {
    need(in, 1, "relation inverse");
    return io::relation_to_json(inverse(as_relation<S>(in[0])));
  }
  if (op == "adjoint") {
    need(in, 1, "relation adjoint");
    return io::relation_to_json(adjoint(as_relation<S>(in[0])));
  }
  if (op == "parts") {
    need(in, 1, "relation parts");
    return parts_json(as_relation<S>(in[0]));
  }
  if (op == "apply") {
    need(in, 2, "relation apply");
    return io::affine_to_json(apply(as_relation<S>(in[0]), as_vector<S>(in[1]), g.tol));
  }
  if (op == "pinv") {
    need(in, 1, "relation pinv");
    return {{"matrix", io::matrix_to_json(relation_pinv(as_matrix<S>(in[0])))}};
  }
  throw io::ParseError("unknown relation operation '" + op + "'");
}

template <Scalar S>
json mvproj_cmd(const std::string& op, const std::vector<json>& in, const Globals& g) {
  if (op == "classify") {
    need(in, 1, "mvproj classify");
    return classify_json(classify(as_relation<S>(in[0]), g.tol));
  }
  if (op == "compress") {
    need(in, 3, "mvproj compress");
    const auto r = compress(as_matrix<S>(in[0]), as_subspace<S>(in[1]), as_subspace<S>(in[2]), g.tol);
    json out{{"common_in_ker_f", r.common_in_ker_f},
             {"domain_condition", r.domain_condition},
             {"range_condition", r.range_condition},
             {"conditions_hold", r.conditions_hold},
             {"product_is_operator", r.product_is_operator},
             {"product_is_idempotent", r.product_is_idempotent},
             {"product_ran_in_dom", r.product_ran_in_dom},
             {"is_projection", r.is_projection},
             {"product", io::relation_to_json(r.product)},
             {"matches_prediction", r.matches_prediction}};
    if (r.predicted) out["predicted"] = io::relation_to_json(*r.predicted);
    return out;
  }
  need(in, 2, "mvproj " + op);
  const Subspace<S> m = as_subspace<S>(in[0]), n = as_subspace<S>(in[1]);
  if (op == "build") {
    const auto e = mv_projection(m, n);
    return {{"relation", io::relation_to_json(e.rel)}, {"parts", parts_json(e.rel)}};
  }
  if (op == "greville") return io::relation_to_json(greville(m, n));
  if (op == "ptak")
    return {{"relation", io::relation_to_json(ptak(m, n))}, {"kernel", io::subspace_to_json(ptak_kernel(m, n))}};
  if (op == "decompose") {
    const auto c = decomposability_conditions_mv(m, n, g.tol);
    json out = decomposition_json(decompose_mv(m, n, g.tol));
    out["conditions"] = {{"dim_m", c.dim_m},
                         {"dim_n", c.dim_n},
                         {"dim_common", c.dim_common},
                         {"dim_m_reduced", c.dim_m_reduced},
                         {"cond_ii", c.cond_ii},
                         {"cond_iii", c.cond_iii},
                         {"cond_iv", c.cond_iv}};
    return out;
  }
  if (op == "continuity") {
    const auto r = continuity_report(m, n, g.tol);
    return {{"cosine", r.cosine},
            {"op_norm", r.op_norm},
            {"criterion_ok", r.criterion_ok},
            {"trivial_intersection", r.trivial_intersection},
            {"predicted_norm", r.predicted_norm}};
  }
  throw io::ParseError("unknown mvproj operation '" + op + "'");
}

template <Scalar S>
json semiclosed_cmd(const std::string& op, const std::vector<json>& in, const Globals& g) {
  if (op == "debranges") {
    need(in, 1, "semiclosed debranges");
    const auto d = debranges(as_matrix<S>(in[0]), g.tol);
    return {{"s", io::subspace_to_json(d.s)},
            {"s_prime", io::subspace_to_json(d.s_prime)},
            {"overlap", io::subspace_to_json(d.overlap)},
            {"relation", io::relation_to_json(d.relation)},
            {"op_norm", d.op_norm},
            {"sum_is_full", d.sum_is_full},
            {"norm_bound_ok", d.norm_bound_ok}};
  }
  if (op == "conjugate") {
    need(in, 3, "semiclosed conjugate");
    const Subspace<S> m = as_subspace<S>(in[1]), n = as_subspace<S>(in[2]);
    const auto r = in[0].is_object() && in[0].contains("dim_in") ? conjugate(as_relation<S>(in[0]), m, n, g.tol)
                                                                  : conjugate(as_matrix<S>(in[0]), m, n, g.tol);
    return {{"relation", io::relation_to_json(r.relation)},
            {"predicted", io::relation_to_json(r.predicted)},
            {"pre_m", io::subspace_to_json(r.pre_m)},
            {"pre_n", io::subspace_to_json(r.pre_n)},
            {"matches", r.matches}};
  }
  need(in, 2, "semiclosed " + op);
  const Mat<S> a = as_matrix<S>(in[0]), b = as_matrix<S>(in[1]);
  if (op == "polar") {
    const auto rp = row_polar(a, b);
    const auto r = residuals(rp);
    return {{"gamma", io::matrix_to_json(rp.gamma)},
            {"ca", io::matrix_to_json(rp.ca)},
            {"cb", io::matrix_to_json(rp.cb)},
            {"frame", io::subspace_to_json(rp.frame)},
            {"residuals",
             {{"douglas_a", r.douglas_a},
              {"douglas_b", r.douglas_b},
              {"gamma_reconstruction", r.gamma_reconstruction},
              {"range_projector", r.range_projector},
              {"ca_norm", r.ca_norm},
              {"cb_norm", r.cb_norm},
              {"scale", r.scale}}}};
  }
  if (op == "ando") {
    const auto r = ando_projection(a, b, g.tol);
    return {{"operator_term", io::relation_to_json(r.operator_term)},
            {"via_gamma", io::relation_to_json(r.via_gamma)},
            {"via_adjoint", io::relation_to_json(r.via_adjoint)},
            {"operator_term_is_operator_part", r.operator_term_is_operator_part},
            {"gamma_form_matches", r.gamma_form_matches},
            {"adjoint_form_matches", r.adjoint_form_matches}};
  }
  if (op == "quasiaffine") {
    const auto q = quasi_affine_form(a, b, g.tol);
    return {{"frame", io::matrix_to_json(q.frame)},
            {"x", io::matrix_to_json(q.x)},
            {"c", io::matrix_to_json(q.c)},
            {"s", io::subspace_to_json(q.s)},
            {"intertwining_distance", q.intertwining_distance},
            {"c_norm", q.c_norm},
            {"c_min_eig", q.c_min_eig},
            {"x_min_eig", q.x_min_eig},
            {"ok", q.ok}};
  }
  if (op == "split") {
    const auto s = gamma_splitting(a, b, g.tol);
    return {{"gamma_ker_cb_adj", io::subspace_to_json(s.gamma_ker_cb_adj)},
            {"gamma_ker_ca_adj", io::subspace_to_json(s.gamma_ker_ca_adj)},
            {"common", io::subspace_to_json(s.common)},
            {"direct", s.direct},
            {"sum_ok", s.sum_ok},
            {"m_ok", s.m_ok},
            {"n_ok", s.n_ok},
            {"corollary_ok", s.corollary_ok}};
  }
  if (op == "orthogonalize") {
    const auto o = orthogonalize(a, b, g.tol);
    return {{"p0", io::matrix_to_json(o.p0)},
            {"s", io::subspace_to_json(o.s)},
            {"conjugated", io::relation_to_json(o.conjugated)},
            {"p0_idempotency", o.p0_idempotency},
            {"p0_selfadjoint", o.p0_selfadjoint},
            {"conjugated_is_mv_projection", o.conjugated_is_mv_projection},
            {"conjugated_domain_full", o.conjugated_domain_full},
            {"p0_matches_formula", o.p0_matches_formula},
            {"orthogonal_split", o.orthogonal_split},
            {"intertwining_distance", o.intertwining_distance}};
  }
  throw io::ParseError("unknown semiclosed operation '" + op + "'");
}

template <Scalar S>
WlssProblem<S> as_problem(const json& j) {
  for (const char* key : {"w", "a", "b"})
    if (!j.is_object() || !j.contains(key)) throw io::ParseError(std::string("field '") + key + "': missing");
  return {io::matrix_from_json<S>(j.at("w"), "w"), io::matrix_from_json<S>(j.at("a"), "a"),
          io::vector_from_json<S>(j.at("b"), "b")};
}

template <Scalar S>
json wlss_cmd(const std::string& op, const std::vector<json>& in, const Globals& g) {
  if (op == "solve") {
    need(in, 1, "wlss solve");
    const auto p = as_problem<S>(in[0]);
    json out = io::affine_to_json(solve(p, g.tol));
    out["optimal_value"] = optimal_value(p);
    return out;
  }
  if (op == "residual") {
    need(in, 2, "wlss residual");
    const auto p = as_problem<S>(in[0]);
    return {{"residual", residual(p.w, p.a, as_vector<S>(in[1]), p.b)}};
  }
  throw io::ParseError("unknown wlss operation '" + op + "'");
}

using Handler = std::function<json(const std::string&, const std::vector<json>&, const Globals&)>;

Handler dispatch(const std::string& group, ScalarKind kind) {
  const bool cx = kind == ScalarKind::complex;
  if (group == "relation") return cx ? Handler(relation_cmd<Complex>) : Handler(relation_cmd<double>);
  if (group == "mvproj") return cx ? Handler(mvproj_cmd<Complex>) : Handler(mvproj_cmd<double>);
  if (group == "semiclosed") return cx ? Handler(semiclosed_cmd<Complex>) : Handler(semiclosed_cmd<double>);
  return cx ? Handler(wlss_cmd<Complex>) : Handler(wlss_cmd<double>);
}

ScalarKind resolve_kind(const Globals& g, const std::vector<json>& in) {
  if (g.scalar == "complex") return ScalarKind::complex;
  if (g.scalar == "real") return ScalarKind::real;
  for (const json& j : in)
    if (j.is_object() && j.contains("scalar")) return io::parse_kind(j);
  return ScalarKind::real;
}

}  // namespace

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"mvrel: linear relations, multivalued projections and weighted least squares"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--tol", g.tol, "comparison tolerance")->capture_default_str();
  app.add_option("--scalar", g.scalar, "real or complex (default: from the inputs)")
      ->check(CLI::IsMember({"real", "complex"}));
  app.add_option("--seed", g.seed, "verify: base seed")->capture_default_str();
  app.add_option("--trials", g.trials, "verify: trials per suite")->capture_default_str()->check(CLI::NonNegativeNumber);
  app.add_option("--max-dim", g.max_dim, "verify: largest ambient dimension")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  app.add_option("--suite", g.suites, "verify: suite tags (repeatable; default all)");

  struct Group {
    std::string name, help;
    std::vector<std::string> ops;
    std::string op;
    CLI::App* cmd = nullptr;
  };
  std::vector<Group> groups{
      {"relation", "relation operations", {"compose", "inverse", "adjoint", "parts", "apply", "pinv"}, {}, {}},
      {"mvproj", "multivalued projections",
       {"build", "classify", "greville", "ptak", "decompose", "compress", "continuity"}, {}, {}},
      {"semiclosed", "semiclosed projections and operator ranges",
       {"polar", "ando", "conjugate", "quasiaffine", "split", "orthogonalize", "debranges"}, {}, {}},
      {"wlss", "weighted least squares", {"solve", "residual"}, {}, {}}};
  for (Group& gr : groups) {
    gr.cmd = app.add_subcommand(gr.name, gr.help);
    gr.cmd->fallthrough();
    gr.cmd->add_option("op", gr.op, "operation")->required()->check(CLI::IsMember(gr.ops));
    gr.cmd->footer("inputs: JSON files or inline JSON");
  }

  bool serial = false;
  std::string replay_file;
  CLI::App* verify_cmd = app.add_subcommand("verify", "run the seeded verification suites");
  verify_cmd->fallthrough();
  verify_cmd->add_flag("--serial", serial, "use the serial reference runner");
  verify_cmd->add_option("--replay", replay_file, "re-evaluate a failure dump");
  CLI::App* list = app.add_subcommand("suites", "list the verification suites");

  // group inputs arrive as raw extras of the top-level app; a vector option would split "[1, 2]" on commas
  app.allow_extras();

  try {
    app.parse(argc, argv);
    const bool group_parsed =
        std::any_of(groups.begin(), groups.end(), [](const Group& gr) { return gr.cmd->parsed(); });
    if (!group_parsed && !app.remaining().empty())
      throw CLI::ExtrasError(app.remaining());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (list->parsed()) {
      json arr = json::array();
      for (const auto& s : verify::registry()) arr.push_back({{"tag", s.tag}, {"summary", s.summary}});
      out << arr.dump(2) << "\n";
      return 0;
    }
    if (verify_cmd->parsed()) {
      verify::VerifyConfig c;
      c.seed = g.seed;
      c.trials = g.trials;
      c.max_dim = g.max_dim;
      c.tol = g.tol;
      c.scalar = g.scalar == "complex" ? ScalarKind::complex : ScalarKind::real;
      c.suites = g.suites;
      if (!replay_file.empty()) {
        const json r = verify::replay(load(replay_file), c);
        out << r.dump(2) << "\n";
        return r.at("pass").get<bool>() ? 0 : 1;
      }
      for (const auto& tag : c.suites) verify::find_suite(tag);
      const json report = verify::run(c, serial ? verify::Runner::serial : verify::Runner::parallel);
      out << report.dump(2) << "\n";
      if (!verify::report_passed(report)) {
        err << "failed suites: " << report.at("summary").at("failed_suites").dump() << "\n";
        return 1;
      }
      return 0;
    }
    for (const Group& gr : groups) {
      if (!gr.cmd->parsed()) continue;
      std::vector<json> in;
      for (const auto& s : app.remaining()) in.push_back(load(s));
      const json result = dispatch(gr.name, resolve_kind(g, in))(gr.op, in, g);
      out << result.dump(2) << "\n";
      return 0;
    }
  } catch (const io::ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const DimensionError& e) {
    err << "dimension error: " << e.what() << "\n";
    return 2;
  } catch (const PreconditionError& e) {
    err << "hypothesis failed: " << e.what() << "\n";
    return 1;
  } catch (const InvariantError& e) {
    err << "internal check failed: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace mvrel

#include "mvrel/verify.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace mvrel::verify {

namespace {

constexpr std::size_t kMaxDumps = 5;

std::string format_value(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

}  // namespace

json config_to_json(const VerifyConfig& c) {
  return {{"seed", c.seed},
          {"trials", c.trials},
          {"max_dim", c.max_dim},
          {"tol", c.tol},
          {"scalar", to_string(c.scalar)},
          {"suites", c.suites}};
}

void Checker::fail(const std::string& msg) {
  if (result_.pass) result_.detail = msg;
  result_.pass = false;
}

void Checker::le(const std::string& what, double value, double bound) {
  if (std::isnan(value)) {
    fail(what + " is NaN");
    result_.worst = value;
    return;
  }
  if (!std::isnan(result_.worst)) result_.worst = std::max(result_.worst, value);
  if (!(value <= bound)) fail(what + " = " + format_value(value) + " > " + format_value(bound));
}

void Checker::at_most(const std::string& what, double value, double bound) {
  if (!(value <= bound)) fail(what + " = " + format_value(value) + " > " + format_value(bound));
}

void Checker::ok(const std::string& what, bool cond) {
  if (!cond) fail(what);
}

namespace detail {
Index pick_dim(Rng& rng, const VerifyConfig& c, Index lo) {
  return rng.integer(lo, std::max(lo, c.max_dim));
}
}  // namespace detail

const std::vector<Suite>& registry() {
  static const std::vector<Suite> suites = [] {
    std::vector<Suite> out;
    register_calculus_suites(out);
    register_semiclosed_suites(out);
    return out;
  }();
  return suites;
}

const Suite& find_suite(const std::string& tag) {
  for (const Suite& s : registry())
    if (s.tag == tag) return s;
  std::string known;
  for (const Suite& s : registry()) known += (known.empty() ? "" : ", ") + s.tag;
  throw io::ParseError("unknown suite '" + tag + "' (known: " + known + ")");
}

std::vector<std::string> suite_tags() {
  std::vector<std::string> tags;
  for (const Suite& s : registry()) tags.push_back(s.tag);
  return tags;
}

json make_instance(const Suite& s, const VerifyConfig& c, std::uint64_t index) {
  Rng rng(trial_seed(c.seed, s.tag, index));
  json inst = s.generate(rng, c, index);
  inst["scalar"] = to_string(c.scalar);
  return inst;
}

TrialResult evaluate(const Suite& s, const json& instance, const VerifyConfig& c) {
  try {
    return s.check(instance, c);
  } catch (const std::exception& e) {
    TrialResult r;
    r.pass = false;
    r.detail = std::string("exception: ") + e.what();
    return r;
  }
}

std::vector<TrialResult> run_trials(const Suite& s, const VerifyConfig& c, Runner runner) {
  const int n = std::max(0, c.trials);
  std::vector<TrialResult> results(static_cast<std::size_t>(n));
  if (runner == Runner::serial) {
    for (int i = 0; i < n; ++i) results[i] = evaluate(s, make_instance(s, c, i), c);
    return results;
  }
#pragma omp parallel for schedule(dynamic, 1)
  for (int i = 0; i < n; ++i) results[i] = evaluate(s, make_instance(s, c, i), c);
  return results;
}

json run(const VerifyConfig& c, Runner runner) {
  std::vector<const Suite*> selected;
  if (c.suites.empty()) {
    for (const Suite& s : registry()) selected.push_back(&s);
  } else {
    for (const std::string& tag : c.suites) selected.push_back(&find_suite(tag));
  }

  json suites = json::array();
  json failed_tags = json::array();
  for (const Suite* s : selected) {
    const std::vector<TrialResult> results = run_trials(*s, c, runner);
    long passed = 0;
    double worst = 0.0;
    std::map<std::string, long> counters;
    json failures = json::array();
    for (std::size_t i = 0; i < results.size(); ++i) {
      const TrialResult& r = results[i];
      if (r.pass) ++passed;
      if (std::isnan(r.worst) || r.worst > worst) worst = r.worst;
      for (const auto& [k, v] : r.counters) counters[k] += v;
      if (!r.pass && failures.size() < kMaxDumps)
        failures.push_back({{"suite", s->tag},
                            {"index", i},
                            {"seed", c.seed},
                            {"detail", r.detail},
                            {"instance", make_instance(*s, c, i)}});
    }
    std::vector<std::string> notes;
    if (s->finalize) notes = s->finalize(counters, c);
    const long failed = static_cast<long>(results.size()) - passed;
    const bool ok = failed == 0 && notes.empty();
    if (!ok) failed_tags.push_back(s->tag);
    json counter_json = json::object();
    for (const auto& [k, v] : counters) counter_json[k] = v;
    suites.push_back({{"tag", s->tag},
                      {"summary", s->summary},
                      {"status", ok ? "pass" : "fail"},
                      {"trials", results.size()},
                      {"passed", passed},
                      {"failed", failed},
                      {"worst_residual", std::isnan(worst) ? json("nan") : json(worst)},
                      {"counters", counter_json},
                      {"requirements_failed", notes},
                      {"failures", failures}});
  }
  return {{"config", config_to_json(c)},
          {"suites", suites},
          {"summary",
           {{"suites", suites.size()},
            {"failed_suites", failed_tags},
            {"status", failed_tags.empty() ? "pass" : "fail"}}}};
}

json replay(const json& dump, const VerifyConfig& c) {
  if (!dump.is_object() || !dump.contains("suite") || !dump.contains("instance"))
    throw io::ParseError("replay: expected an object with 'suite' and 'instance'");
  const Suite& s = find_suite(dump.at("suite").get<std::string>());
  VerifyConfig cfg = c;
  cfg.scalar = io::parse_kind(dump.at("instance"), c.scalar);
  const TrialResult r = evaluate(s, dump.at("instance"), cfg);
  json counters = json::object();
  for (const auto& [k, v] : r.counters) counters[k] = v;
  json out{{"suite", s.tag},
           {"pass", r.pass},
           {"worst_residual", std::isnan(r.worst) ? json("nan") : json(r.worst)},
           {"detail", r.detail},
           {"counters", counters}};
  if (dump.contains("index")) out["index"] = dump.at("index");
  return out;
}

bool report_passed(const json& report) {
  return report.at("summary").at("status") == "pass";
}

}  // namespace mvrel::verify

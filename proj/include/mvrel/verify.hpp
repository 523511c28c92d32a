#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "mvrel/json_io.hpp"
#include "mvrel/random.hpp"
#include "mvrel/types.hpp"

namespace mvrel::verify {

using io::json;

struct VerifyConfig {
  std::uint64_t seed = 0;
  int trials = 200;
  Index max_dim = 8;
  double tol = kCompareTol;
  ScalarKind scalar = ScalarKind::real;
  std::vector<std::string> suites;  // empty: all
};

json config_to_json(const VerifyConfig& c);

/// Outcome of one trial. `worst` is the largest residual the trial measured.
struct TrialResult {
  bool pass = true;
  double worst = 0.0;
  std::string detail;
  std::map<std::string, long> counters;
};

/// Accumulates named checks into a TrialResult; the first failure is kept
/// as the detail message.
class Checker {
 public:
  /// value <= bound; value also feeds the worst residual.
  void le(const std::string& what, double value, double bound);
  /// value <= bound without touching the worst residual (norm bounds).
  void at_most(const std::string& what, double value, double bound);
  void ok(const std::string& what, bool cond);
  void count(const std::string& key, long n = 1) { result_.counters[key] += n; }
  TrialResult take() { return std::move(result_); }

 private:
  void fail(const std::string& msg);
  TrialResult result_;
};

struct Suite {
  std::string tag;
  std::string summary;
  std::function<json(Rng&, const VerifyConfig&, std::uint64_t index)> generate;
  std::function<TrialResult(const json&, const VerifyConfig&)> check;
  /// Suite-level requirements over the summed counters; returns failure messages.
  std::function<std::vector<std::string>(const std::map<std::string, long>&, const VerifyConfig&)> finalize;
};

const std::vector<Suite>& registry();
const Suite& find_suite(const std::string& tag);
std::vector<std::string> suite_tags();

enum class Runner { serial, parallel };

/// Per-trial results in trial-index order.
std::vector<TrialResult> run_trials(const Suite& s, const VerifyConfig& c, Runner runner);

/// The instance for (config, suite, index), exactly as the runners see it.
json make_instance(const Suite& s, const VerifyConfig& c, std::uint64_t index);

/// Evaluates one instance; exceptions become failed trials.
TrialResult evaluate(const Suite& s, const json& instance, const VerifyConfig& c);

/// Full report. Contains no timing or host data so that it is a pure
/// function of the config.
json run(const VerifyConfig& c, Runner runner = Runner::parallel);

/// Re-evaluates a failure dump {"suite", "index", "instance", ...}.
json replay(const json& dump, const VerifyConfig& c);

bool report_passed(const json& report);

/// Helpers shared by suite definitions.
namespace detail {
Index pick_dim(Rng& rng, const VerifyConfig& c, Index lo = 1);
}  // namespace detail

void register_calculus_suites(std::vector<Suite>& out);
void register_semiclosed_suites(std::vector<Suite>& out);

}  // namespace mvrel::verify

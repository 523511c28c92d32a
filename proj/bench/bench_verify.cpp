#include <chrono>
#include <iostream>

#include <CLI11.hpp>

#include "mvrel/verify.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace mvrel;

int main(int argc, char** argv) {
  CLI::App app{"serial vs OpenMP trial runner"};
  verify::VerifyConfig c;
  c.trials = 100;
  int repeats = 1;
  app.add_option("--trials", c.trials)->capture_default_str();
  app.add_option("--max-dim", c.max_dim)->capture_default_str();
  app.add_option("--seed", c.seed)->capture_default_str();
  app.add_option("--suite", c.suites, "default: all");
  app.add_option("--repeats", repeats)->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  auto time = [&](verify::Runner r, io::json& report) {
    double best = 1e300;
    for (int i = 0; i < repeats; ++i) {
      const auto t0 = std::chrono::steady_clock::now();
      report = verify::run(c, r);
      const auto t1 = std::chrono::steady_clock::now();
      best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
    }
    return best;
  };

  io::json serial, parallel;
  const double ts = time(verify::Runner::serial, serial);
  const double tp = time(verify::Runner::parallel, parallel);
  int threads = 1;
#ifdef _OPENMP
  threads = omp_get_max_threads();
#endif
  const bool same = serial.dump() == parallel.dump();
  io::json out{{"trials", c.trials},
               {"suites", serial.at("suites").size()},
               {"threads", threads},
               {"serial_seconds", ts},
               {"parallel_seconds", tp},
               {"speedup", tp > 0 ? ts / tp : 0.0},
               {"identical_reports", same}};
  std::cout << out.dump(2) << "\n";
  return same ? 0 : 1;
}

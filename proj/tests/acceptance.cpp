// Acceptance suite: every criterion at full sample sizes and nominal tolerances.
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "cenfrac/verify.hpp"

int main(int argc, char** argv) {
  cenfrac::VerifyConfig cfg;
  if (argc > 1) cfg.beta = std::stod(argv[1]);

  std::map<int, std::vector<cenfrac::CheckResult>> by_criterion;
  int last = 0;
  auto flush = [&](int k) {
    const auto& checks = by_criterion[k];
    bool ok = !checks.empty();
    double secs = 0.0;
    for (const auto& c : checks) {
      ok = ok && c.passed;
      secs += c.seconds;
    }
    std::printf("criterion %2d: %s  (%zu checks, %.1f s)\n", k, ok ? "PASS" : "FAIL", checks.size(),
                secs);
    for (const auto& c : checks) {
      std::printf("    %-4s %-22s achieved=% .10g target=% .10g err=%.3e tol=%.3e  %s\n",
                  c.passed ? "ok" : "FAIL", c.id.c_str(), c.achieved, c.target, c.error, c.tolerance,
                  c.note.c_str());
    }
    std::fflush(stdout);
  };

  const auto results = cenfrac::run_verification(cfg, [&](const cenfrac::CheckResult& r) {
    if (last != 0 && r.criterion != last) flush(last);
    last = r.criterion;
    by_criterion[r.criterion].push_back(r);
  });
  if (last != 0) flush(last);

  int failed = 0;
  for (int k = 1; k <= 15; ++k) {
    for (const auto& c : by_criterion[k]) {
      if (!c.passed) {
        ++failed;
        break;
      }
    }
  }
  std::printf("%d of 15 criteria passed (%zu checks)\n", 15 - failed, results.size());
  return failed == 0 ? 0 : 1;
}

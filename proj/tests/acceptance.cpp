// Acceptance suite: runs every top-level check at its pinned tolerance and
// prints one pass/fail line per criterion. Exit status is nonzero if any
// criterion fails.

#include <cstdio>
#include <exception>

#include "eberlein/verify.hpp"

int main() {
  using namespace eberlein;
  RunConfig cfg;  // defaults: exact arithmetic, fixed seed
  Report report;
  try {
    report = run_verify(cfg);
  } catch (const std::exception& e) {
    std::printf("[fail] acceptance suite aborted: %s\n", e.what());
    return 1;
  }
  int failed = 0;
  for (const CheckRecord& c : report.checks) {
    std::printf("[%s] %s", status_name(c.status), c.id.c_str());
    if (!c.evidence.is_null() && !c.evidence.empty())
      std::printf("  %s", c.evidence.dump().c_str());
    std::printf("\n");
    if (c.status == CheckStatus::Fail) ++failed;
  }
  std::printf("%d of %zu checks failed\n", failed, report.checks.size());
  return failed == 0 ? 0 : 1;
}

#include <cstdio>

#include "logcvx/checks.hpp"

int main() {
  const auto outcomes = logcvx::run_checks({});
  int failed = 0;
  for (const auto& o : outcomes) {
    std::printf("[%s] %2d %-12s %s: %s (%.2f s)\n", o.passed ? "PASS" : "FAIL", o.id, o.tag.c_str(),
                o.name.c_str(), o.detail.c_str(), o.seconds);
    failed += o.passed ? 0 : 1;
  }
  std::printf("%zu criteria, %d failed\n", outcomes.size(), failed);
  return failed == 0 ? 0 : 1;
}

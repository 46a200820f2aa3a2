#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "pifin/acceptance.hpp"

int main(int argc, char** argv) {
  std::vector<int> ids;
  for (int i = 1; i < argc; ++i) ids.push_back(std::atoi(argv[i]));
  int failed = 0;
  for (const auto& c : pifin::acceptance::criteria()) {
    if (!ids.empty() && std::find(ids.begin(), ids.end(), c.id) == ids.end()) continue;
    auto r = pifin::acceptance::run_one(c);
    std::printf("[%s] %2d %s (%.2fs): %s\n", r.passed ? "PASS" : "FAIL", r.id, r.title.c_str(), r.seconds,
                r.detail.c_str());
    std::fflush(stdout);
    failed += !r.passed;
  }
  std::printf("%d criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}

#include <cstdio>

#include "acceptance.hpp"

int main() {
  auto results = wvol::acceptance::run_all();
  int failed = 0;
  for (const auto& r : results) {
    std::printf("%s\n", wvol::acceptance::format_line(r).c_str());
    if (!r.pass) ++failed;
  }
  std::printf("\n%d of %zu criteria failed\n", failed, results.size());
  for (const auto& r : results) {
    std::printf("\nC%d details\n", r.id);
    for (const auto& d : r.details) std::printf("  %s\n", d.c_str());
  }
  return failed == 0 ? 0 : 1;
}

// Acceptance suite: runs every verification criterion at full level and
// prints one pass/fail line per check.

#include <cstdio>
#include <cstdlib>
#include <cstring>

#include "cosserat/verify.hpp"

int main(int argc, char** argv) {
  auto level = cosserat::verify::Level::Full;
  unsigned seed = 1;
  for (int a = 1; a < argc; ++a) {
    if (std::strcmp(argv[a], "--quick") == 0) level = cosserat::verify::Level::Quick;
    if (std::strcmp(argv[a], "--seed") == 0 && a + 1 < argc)
      seed = static_cast<unsigned>(std::atoi(argv[++a]));
  }

  const cosserat::verify::Report rep = cosserat::verify::run(level, seed);
  for (const auto& c : rep.checks)
    std::printf("%s %s: %s\n", c.pass ? "[PASS]" : "[FAIL]", c.name.c_str(), c.detail.c_str());
  std::printf("%s (%.1f s)\n", rep.all_pass() ? "acceptance: all criteria satisfied"
                                              : "acceptance: FAILURES present",
              rep.seconds);
  return rep.all_pass() ? 0 : 1;
}

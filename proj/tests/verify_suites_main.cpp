// Thin ctest driver: run one verification suite with the default config.

#include <cstdio>

#include "hsbte/verify.hpp"

int main(int argc, char** argv) {
  if (argc != 2) {
    std::fprintf(stderr, "usage: %s <suite>\n", argv[0]);
    return 2;
  }
  hsbte::cfg::RunConfig config;
  const auto s = hsbte::verify::run_suite(argv[1], config);
  for (const auto& c : s.checks)
    std::printf("[%s] %-58s residual %.3e  tol %.1e\n",
                c.pass ? "ok" : "FAIL", c.name.c_str(), c.residual,
                c.tolerance);
  std::printf("suite %s: %s (%.2fs)\n", s.name.c_str(),
              s.pass ? "PASS" : "FAIL", s.seconds);
  return s.pass ? 0 : 1;
}

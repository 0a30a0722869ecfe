// Seeded triangle-inequality campaign; prints the report JSON.
#include <cstdio>
#include <cstdlib>
#include <iostream>

#include "pqdist.hpp"

int main(int argc, char** argv) {
  pqdist::TrialConfig cfg;
  cfg.property = pqdist::Property::triangle;
  cfg.n = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 5;
  cfg.p = argc > 2 ? std::strtod(argv[2], nullptr) : 2.5;
  cfg.trials = 20000;
  cfg.seed = 11;
  cfg.matrix_mode = pqdist::MatrixMode::repaired_random;

  const auto report = pqdist::fuzz(cfg);
  std::cout << pqdist::report_to_json(report).dump(2) << '\n';
  return report.violations == 0 ? 0 : 1;
}

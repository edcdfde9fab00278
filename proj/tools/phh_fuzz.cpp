// Randomized robustness driver for the hand-file reader and the action
// grammar. Feeds mutated and synthesized inputs through parse_document /
// parse_action (and replay for anything that parses) for a time budget and
// verifies that every input yields a structured result: no crash, no hang,
// no escaped exception.
//
//   phh-fuzz [--seconds N] [--seed S] [--corpus file]...

#include <fstream>
#include <iostream>
#include <sstream>

#include "fuzz_driver.hpp"

int main(int argc, char** argv) {
  double seconds = 10.0;
  std::uint64_t seed = 1;
  std::vector<std::string> corpus;

  for (int i = 1; i < argc; ++i) {
    std::string arg = argv[i];
    if (arg == "--seconds" && i + 1 < argc) {
      seconds = std::stod(argv[++i]);
    } else if (arg == "--seed" && i + 1 < argc) {
      seed = std::stoull(argv[++i]);
    } else if (arg == "--corpus" && i + 1 < argc) {
      std::ifstream in(argv[++i], std::ios::binary);
      if (in) {
        std::ostringstream ss;
        ss << in.rdbuf();
        corpus.push_back(ss.str());
      }
    } else {
      std::cerr
          << "usage: phh-fuzz [--seconds N] [--seed S] [--corpus file]...\n";
      return 2;
    }
  }

  auto outcome = phh_fuzz::run_fuzz(
      seconds, seed, std::move(corpus),
      [](std::uint64_t iterations, double elapsed) {
        std::cout << "... " << iterations << " inputs, " << elapsed << " s\n";
      });
  if (outcome.crashed) {
    std::cerr << "FUZZ FAILURE after " << outcome.iterations
              << " iterations: " << outcome.failure << "\n";
    return 1;
  }
  std::cout << "fuzzed " << outcome.iterations << " inputs in " << seconds
            << " s with no crashes (" << outcome.parsed_clean
            << " parsed clean)\n";
  return 0;
}

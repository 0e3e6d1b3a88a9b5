// Acceptance suite: runs every validation criterion at full scale and prints
// one PASS/FAIL line per criterion. Exit status is nonzero when any fails.

#include <cstdlib>
#include <iostream>
#include <string>

#include "fbmax/validate.hpp"
#include "fbmax/version.hpp"

int main(int argc, char** argv) {
  fbmax::validate::Options opts;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    const auto next = [&](const char* name) -> std::string {
      if (i + 1 >= argc) {
        std::cerr << name << " needs a value\n";
        std::exit(2);
      }
      return argv[++i];
    };
    if (arg == "--scale") {
      opts.scale = std::stod(next("--scale"));
    } else if (arg == "--seed") {
      opts.seed = std::stoull(next("--seed"));
    } else if (arg == "--threads") {
      opts.threads = std::stoi(next("--threads"));
    } else if (arg == "--criterion") {
      opts.criteria.push_back(std::stoi(next("--criterion")));
    } else {
      std::cerr << "usage: fbmax_acceptance [--scale S] [--seed N] [--threads K] "
                   "[--criterion ID]...\n";
      return 2;
    }
  }

  std::cout << "fbmax acceptance suite " << fbmax::kVersion << " (scale=" << opts.scale
            << ", seed=" << opts.seed << ", threads=" << opts.threads << ")\n";
  const auto results = fbmax::validate::run_acceptance(opts, &std::cout);

  std::size_t passed = 0;
  for (const auto& r : results) passed += r.passed ? 1 : 0;
  std::cout << passed << "/" << results.size() << " criteria passed\n";
  return fbmax::validate::all_passed(results) ? 0 : 1;
}

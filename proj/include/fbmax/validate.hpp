#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace fbmax::validate {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

struct Options {
  /// Multiplies the sample counts of the statistical criteria; 1.0 is the
  /// authoritative scale. Scaled counts never drop below 2000.
  double scale = 1.0;
  std::uint64_t seed = 7;
  int threads = 1;
  /// Empty runs everything; otherwise criterion ids to run.
  std::vector<int> criteria;
  /// Overrides the 1.695 coefficient checked by criterion 2 (perturbation hook
  /// for the suite's own mutation test).
  double mh_upper_coef = 0.0;  // 0 = library constant
};

/// Suite name -> criterion ids. Known suites: closed_form {1..5}, sampler_law {6},
/// calibration {7}, mechanics {8,9,10}, dominance {11}, monotonicity {12},
/// determinism {13}.
std::vector<int> suite_criteria(const std::string& suite);
std::vector<std::string> suite_names();

/// Runs the requested criteria at the configured scale, streaming one
/// "[id] PASS/FAIL name: detail" line per criterion to `log` when non-null.
std::vector<CriterionResult> run_acceptance(const Options& opts, std::ostream* log);

bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace fbmax::validate

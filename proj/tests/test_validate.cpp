#include <doctest.h>

#include <sstream>

#include "fbmax/validate.hpp"

using namespace fbmax::validate;

TEST_CASE("closed-form criteria pass at full scale") {
  Options opts;
  opts.criteria = {1, 2, 3, 4, 5};
  std::ostringstream log;
  const auto results = run_acceptance(opts, &log);
  REQUIRE(results.size() == 5);
  for (const auto& r : results) {
    INFO(r.name, ": ", r.detail);
    CHECK(r.passed);
  }
  CHECK(all_passed(results));
  CHECK(log.str().find("PASS") != std::string::npos);
}

TEST_CASE("a perturbed coefficient makes the derivation criterion fail") {
  Options opts;
  opts.criteria = {2};
  opts.mh_upper_coef = 1.5;
  const auto results = run_acceptance(opts, nullptr);
  REQUIRE(results.size() == 1);
  CHECK_FALSE(results[0].passed);
  CHECK_FALSE(all_passed(results));
}

TEST_CASE("statistical criteria run end to end at reduced scale") {
  Options opts;
  opts.scale = 0.02;
  opts.criteria = {8, 9, 10, 12, 13};
  std::ostringstream log;
  const auto results = run_acceptance(opts, &log);
  for (const auto& r : results) {
    INFO(r.name, ": ", r.detail);
    CHECK(r.passed);
  }
}

TEST_CASE("suite mapping") {
  CHECK(suite_criteria("closed_form") == std::vector<int>{1, 2, 3, 4, 5});
  CHECK(suite_criteria("calibration") == std::vector<int>{7});
  CHECK(suite_criteria("determinism") == std::vector<int>{13});
  CHECK_THROWS_AS(suite_criteria("nope"), std::invalid_argument);
  CHECK(suite_names().size() == 7);
}

TEST_CASE("unknown criterion id is rejected") {
  Options opts;
  opts.criteria = {99};
  CHECK_THROWS_AS(run_acceptance(opts, nullptr), std::invalid_argument);
}

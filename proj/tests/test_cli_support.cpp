#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdlib>

#include "doctest.h"
#include "qsim/cli_support.hpp"

using namespace qsim;

TEST_CASE("sweep parsing") {
  const SweepSpec single = SweepSpec::parse("1e-3");
  CHECK(single.count == 1);
  CHECK(single.at(0) == 1e-3);
  CHECK(single.grid() == std::vector<double>{1e-3});

  const SweepSpec sweep = SweepSpec::parse("0:2e-3:21");
  CHECK(sweep.count == 21);
  CHECK(sweep.at(0) == 0.0);
  CHECK(sweep.at(20) == 2e-3);
  // grid points reproduce the index formula exactly
  for (long i = 0; i < sweep.count; ++i)
    CHECK(sweep.at(i) == 0.0 + static_cast<double>(i) * (2e-3 - 0.0) / 20.0);

  CHECK_THROWS_AS(SweepSpec::parse("1:2"), std::invalid_argument);
  CHECK_THROWS_AS(SweepSpec::parse("1:2:3:4"), std::invalid_argument);
  CHECK_THROWS_AS(SweepSpec::parse("a:2:3"), std::invalid_argument);
  CHECK_THROWS_AS(SweepSpec::parse("1:2:0"), std::invalid_argument);
  CHECK_THROWS_AS(SweepSpec::parse(""), std::invalid_argument);
}

TEST_CASE("double list parsing") {
  const auto v = parse_double_list("0,2e-4,1e-2");
  REQUIRE(v.size() == 3);
  CHECK(v[0] == 0.0);
  CHECK(v[1] == 2e-4);
  CHECK(v[2] == 1e-2);
  CHECK_THROWS_AS(parse_double_list("1,,2"), std::invalid_argument);
}

TEST_CASE("doubles round-trip through their printed form") {
  for (double v : {0.0, 1.0, 0.5, 1e-3, 2e-4, 0.8751677206638719, 1.0 / 3.0}) {
    const std::string s = format_double(v);
    CHECK(std::strtod(s.c_str(), nullptr) == v);
  }
}

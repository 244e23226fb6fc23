#include <doctest.h>

#include "qgclass/config.hpp"
#include "qgclass/suite.hpp"

using namespace qgclass;

TEST_CASE("minimal C1 config") {
  const auto cfg = parse_config(R"(
[[case]]
name = "c1"
series = "C"
rank = 1
s = [2]
lambda1 = [0]
depth = 4
)");
  REQUIRE(cfg.cases.size() == 1);
  const auto& c = cfg.cases[0];
  CHECK(c.depth == 4);
  CHECK(c.kmax == 3);
  CHECK(c.oracle);
  CHECK(c.suites.size() == kSuites.size());
  CHECK(c.lambda1 == Weight{0});
}

TEST_CASE("defaults table and field parsing") {
  const auto cfg = parse_config(R"(
[defaults]
depth = 2
kmax = 1

[[case]]
name = "p"
series = "C"
rank = 2
s = [1, "i"]
suites = ["qop", "weyl"]
weyl = ["[2,-1]"]
)");
  const auto& c = cfg.cases.at(0);
  CHECK(c.depth == 2);
  CHECK(c.kmax == 1);
  CHECK(c.s[1] == Coef::imaginary_unit());
  CHECK(c.runs("qop"));
  CHECK(!c.runs("pbw"));
  REQUIRE(c.weyl.size() == 1);
  CHECK(c.weyl[0].perm == std::vector<int>{1, 0});
  CHECK(c.weyl[0].sign == std::vector<int>{1, -1});
  CHECK(c.mu_bar == Weight{0, 0});
}

TEST_CASE("D rank one is rejected") {
  CHECK_THROWS_AS(parse_config("[[case]]\nname = \"d\"\nseries = \"D\"\nrank = 1\ns = [2]\n"), SpecError);
}

TEST_CASE("lambda1 off C*_{k,reg}") {
  try {
    parse_config("[[case]]\nname = \"x\"\nseries = \"C\"\nrank = 2\ns = [2, 2]\nlambda1 = [0, 1]\n");
    FAIL("accepted");
  } catch (const RegularityError& e) {
    CHECK(std::string(e.what()).find("C*_{k,reg}") != std::string::npos);
  }
}

TEST_CASE("syntax errors carry the line") {
  try {
    parse_config("[[case]]\nname = \"x\"\nrank = = 2\n", "bad.toml");
    FAIL("accepted");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("bad.toml:3") != std::string::npos);
  }
}

TEST_CASE("semantic errors") {
  CHECK_THROWS_AS(parse_config("[[case]]\nname = \"x\"\nseries = \"C\"\nrank = 1\ns = [2]\nflavour = 1\n"), SpecError);
  CHECK_THROWS_AS(parse_config("[[case]]\nname = \"x\"\nseries = \"C\"\nrank = 2\ns = [2]\n"), SpecError);
  CHECK_THROWS_AS(parse_config("[[case]]\nname = \"x\"\nseries = \"C\"\nrank = 1\ns = [2]\nsuites = [\"bogus\"]\n"), SpecError);
  CHECK_THROWS_AS(parse_config("[[case]]\nname = \"x\"\nseries = \"C\"\nrank = 1\ns = [2]\n[[case]]\nname = \"x\"\nseries = \"C\"\nrank = 1\ns = [3]\n"),
                  SpecError);
  CHECK_THROWS_AS(parse_config("[[case]]\nname = \"x\"\nseries = \"D\"\nrank = 2\ns = [2, 3]\nweyl = [\"[-1,2]\"]\n"), SpecError);
  CHECK_THROWS_AS(parse_signed_perm("[1,0]", 2), SpecError);
  CHECK_THROWS_AS(parse_signed_perm("1,2", 2), SpecError);
}

TEST_CASE("expected errors become passing records") {
  const auto cfg = parse_config(R"(
[[case]]
name = "wall"
series = "C"
rank = 2
s = [2, 2]
lambda1 = [0, 1]
expect_error = "regularity"
)");
  const auto recs = run_config(cfg, RunOptions{});
  REQUIRE(recs.size() == 1);
  CHECK(recs[0].status == Status::pass);
  CHECK(recs[0].subject == "wall");
}

TEST_CASE("unexpected errors fail and skip dependents") {
  CaseConfig c;
  c.name = "zero";
  c.series = Series::C;
  c.rank = 1;
  c.s = {Coef(0)};
  c.mu_bar = Weight{0};
  c.suites.insert(kSuites.begin(), kSuites.end());
  const auto recs = run_case(c, RunOptions{});
  REQUIRE(recs.size() >= 2);
  CHECK(recs[0].status == Status::fail);
  bool skipped = false;
  for (const auto& r : recs) skipped = skipped || r.status == Status::skipped;
  CHECK(skipped);
}

TEST_CASE("run_case on C1 passes everything") {
  const auto cfg = parse_config(R"(
[[case]]
name = "c1"
series = "C"
rank = 1
s = [2]
lambda1 = [0]
depth = 3
kmax = 2
pbw_height = 4
)");
  for (const auto& r : run_config(cfg, RunOptions{})) {
    CAPTURE(r.name);
    CHECK(r.status != Status::fail);
  }
}

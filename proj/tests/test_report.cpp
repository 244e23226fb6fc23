#include <doctest.h>

#include "qgclass/report.hpp"
#include "qgclass/suite.hpp"

#include <json.hpp>

#include <set>
#include <sstream>

using namespace qgclass;

namespace {

const char* kSmoke = R"(
[defaults]
depth = 2
kmax = 2
pbw_height = 3

[[case]]
name = "b1"
series = "B"
rank = 1
s = [3]

[[case]]
name = "c2-levi"
series = "C"
rank = 2
s = [2, 2]
suites = ["natural", "shapovalov", "filtration", "qop", "weyl"]
)";

}  // namespace

TEST_CASE("empty report") {
  CHECK(render_jsonl({}).empty());
  CHECK(exit_code({}) == 0);
  CHECK(render_text({}) == "0 checks: 0 pass, 0 fail, 0 flagged, 0 skipped\n");
}

TEST_CASE("one failure") {
  CheckRecord r = make_check("qop", "x", "statement", false).with("residue", "v^2");
  r.subject = "case";
  const CheckList l{r};
  CHECK(exit_code(l) == 1);
  const auto j = nlohmann::json::parse(render_jsonl(l));
  CHECK(j["status"] == "fail");
  CHECK(j["witness"]["residue"] == "v^2");
  CHECK(render_text(l).find("FAIL  case  qop  x") == 0);
  CheckRecord flagged = r;
  flagged.status = Status::flagged;
  CHECK(exit_code({flagged}) == 0);
}

TEST_CASE("reports are deterministic") {
  const auto cfg = parse_config(kSmoke);
  RunOptions serial;
  serial.exec = Exec::serial;
  const auto a = run_config(cfg, RunOptions{});
  const auto b = run_config(cfg, RunOptions{});
  const auto c = run_config(cfg, serial);
  CHECK(render_jsonl(a, false) == render_jsonl(b, false));
  CHECK(render_jsonl(a, false) == render_jsonl(c, false));
  CHECK(render_text(a) == render_text(c));
  CHECK(exit_code(a) == 0);
}

TEST_CASE("records are unique and carry timings") {
  const auto recs = run_config(parse_config(kSmoke), RunOptions{});
  std::set<std::tuple<std::string, std::string, std::string>> keys;
  std::istringstream in(render_jsonl(recs));
  std::string line;
  while (std::getline(in, line)) {
    const auto j = nlohmann::json::parse(line);
    CHECK(j.contains("time_ms"));
    const bool fresh = keys.insert({j["case"].get<std::string>(), j["suite"].get<std::string>(), j["name"].get<std::string>()}).second;
    CHECK(fresh);
  }
  CHECK(keys.size() == recs.size());
}

// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
//
//   acceptance --config configs/default.toml [--only N]

#include "qgclass/classchar.hpp"
#include "qgclass/report.hpp"
#include "qgclass/suite.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

using namespace qgclass;

namespace {

using Clock = std::chrono::steady_clock;

// Wall-clock limits in seconds; 0 means none.
constexpr double kLimitNatural = 10;
constexpr double kLimitPbw = 120;
constexpr double kLimitShapovalov = 300;
constexpr double kLimitSpectrum = 900;

struct Outcome {
  bool ok = true;
  std::string detail;
  double seconds = 0;
  double limit = 0;
};

struct Run {
  CheckList checks;
  double seconds = 0;
};

bool contains(const std::string& s, const std::string& needle) { return s.find(needle) != std::string::npos; }

bool starts_with(const std::string& s, const std::string& p) { return s.rfind(p, 0) == 0; }

// Every configured case (errors excluded) restricted to one suite.
Run run_suite(const RunConfig& cfg, const std::string& suite, const std::function<bool(const CaseConfig&)>& keep) {
  RunConfig sub;
  for (auto c : cfg.cases) {
    if (!c.expect_error.empty() || !c.runs(suite) || !keep(c)) continue;
    c.suites = {suite};
    sub.cases.push_back(std::move(c));
  }
  const auto t0 = Clock::now();
  Run r;
  r.checks = run_config(sub, RunOptions{});
  r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  return r;
}

bool any_case(const CaseConfig&) { return true; }

std::function<bool(const CaseConfig&)> named_algebra(std::set<std::string> names) {
  return [names](const CaseConfig& c) { return names.count(std::string(1, series_letter(c.series)) + std::to_string(c.rank)) != 0; };
}

// Tally records matching pred; failures listed by case and name.
struct Tally {
  std::size_t seen = 0;
  std::size_t skipped = 0;
  std::vector<std::string> bad;
  void add(const CheckRecord& r) {
    ++seen;
    if (r.status == Status::skipped) ++skipped;
    if (r.status == Status::fail) bad.push_back(r.subject + ":" + r.name);
  }
  bool ok() const { return seen > 0 && bad.empty(); }
  std::string summary() const {
    std::string s = std::to_string(seen) + " checks";
    if (skipped) s += " (" + std::to_string(skipped) + " not applicable)";
    if (!bad.empty()) {
      s += ", failing";
      for (std::size_t i = 0; i < bad.size() && i < 6; ++i) s += " " + bad[i];
      if (bad.size() > 6) s += " ...";
    }
    return s;
  }
};

Tally tally(const CheckList& l, const std::function<bool(const CheckRecord&)>& pred) {
  Tally t;
  for (const auto& r : l)
    if (pred(r)) t.add(r);
  return t;
}

const std::vector<std::pair<Series, int>> kAlgebras = {
    {Series::B, 1}, {Series::B, 2}, {Series::C, 1}, {Series::C, 2}, {Series::C, 3}, {Series::D, 3}, {Series::D, 4}};

Outcome c1_natural() {
  Outcome o;
  o.limit = kLimitNatural;
  const auto t0 = Clock::now();
  CheckList all;
  for (auto [s, n] : kAlgebras)
    for (auto& r : natural_rep_checks(RootDatum(s, n))) {
      r.subject = RootDatum(s, n).name();
      all.push_back(std::move(r));
    }
  o.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  const auto t = tally(all, [](const CheckRecord&) { return true; });
  o.ok = t.ok();
  o.detail = "B1 B2 C1 C2 C3 D3 D4, " + t.summary();
  return o;
}

Outcome c2_pbw() {
  Outcome o;
  o.limit = kLimitPbw;
  const auto t0 = Clock::now();
  CheckList all;
  for (auto [s, n] : kAlgebras) {
    const RootDatum D(s, n);
    const GradedBasis U(D, 6);
    for (auto& r : pbw_checks(U, 6)) {
      r.subject = D.name();
      all.push_back(std::move(r));
    }
  }
  o.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  const auto t = tally(all, [](const CheckRecord&) { return true; });
  o.ok = t.ok();
  o.detail = "height <= 6, " + t.summary();
  return o;
}

Outcome c3_singular(const RunConfig& cfg, const Run& run) {
  Outcome o;
  o.limit = kLimitShapovalov;
  o.seconds = run.seconds;
  std::set<std::string> generic;
  for (const auto& c : cfg.cases)
    if (c.expect_error.empty() && contains(c.name, "generic") &&
        (c.rank == 2 ? c.series != Series::D : c.series == Series::D && c.rank == 4))
      generic.insert(c.name);
  const auto cols = tally(run.checks, [&](const CheckRecord& r) {
    return generic.count(r.subject) && (r.name == "singular-columns" || r.name == "e-on-f");
  });
  const auto sing = tally(run.checks, [](const CheckRecord& r) { return starts_with(r.name, "singular") && r.name != "singular-columns"; });
  o.ok = cols.ok() && sing.ok() && cols.seen == 2 * generic.size();
  o.detail = "generic B2 C2 D4 columns and e-on-f: " + cols.summary() + "; k-singular vectors: " + sing.summary();
  return o;
}

Outcome c4_classical(const Run& run) {
  Outcome o;
  const auto t = tally(run.checks, [](const CheckRecord& r) { return starts_with(r.name, "classical-limit"); });
  o.ok = t.ok();
  o.detail = t.summary();
  return o;
}

Outcome c5_filtration(const Run& run) {
  Outcome o;
  o.seconds = run.seconds;
  const auto t = tally(run.checks, [](const CheckRecord& r) { return r.suite == "filtration"; });
  std::size_t collapse = 0;
  for (const auto& r : run.checks)
    if (contains(r.name, "collapse") && r.status == Status::pass) ++collapse;
  o.ok = t.ok() && collapse >= 3;
  o.detail = "C2 Levi, C2 pseudo-Levi, D4 Levi at depth 4: " + t.summary() + ", " + std::to_string(collapse) + " collapse checks";
  return o;
}

Outcome c6_intertwining(const Run& run) {
  Outcome o;
  const auto t = tally(run.checks, [](const CheckRecord& r) { return contains(r.name, "intertwining") || contains(r.name, "convention"); });
  const auto oracle = tally(run.checks, [](const CheckRecord& r) { return contains(r.name, "oracle"); });
  o.ok = t.ok() && oracle.ok() && oracle.seen >= 2;
  o.detail = "C1 B1 C2 B2 at depth 4: " + t.summary() + "; oracle on C1, B1: " + oracle.summary();
  o.seconds = run.seconds;
  return o;
}

Outcome c7_spectrum(const Run& run) {
  Outcome o;
  o.limit = kLimitSpectrum;
  o.seconds = run.seconds;
  const auto t = tally(run.checks, [](const CheckRecord& r) {
    return contains(r.name, "eigenvalue") || contains(r.name, "minimal-polynomial") || contains(r.name, "filtration-preserved") ||
           contains(r.name, "construction");
  });
  std::size_t quotients = 0;
  for (const auto& r : run.checks)
    if (starts_with(r.name, "quotient minimal-polynomial")) ++quotients;
  o.ok = t.ok() && quotients > 0;
  o.detail = "full matrix, " + t.summary() + ", " + std::to_string(quotients) + " quotient modules";
  return o;
}

Outcome c8_characters(const Run& run) {
  Outcome o;
  o.seconds = run.seconds;
  const auto tau = tally(run.checks, [](const CheckRecord& r) { return contains(r.name, "tau k=") || contains(r.name, "central k="); });
  const auto minus = tally(run.checks, [](const CheckRecord& r) { return r.subject.rfind("D4", 0) == 0 && contains(r.name, "tau-minus"); });
  o.ok = tau.ok() && minus.ok() && minus.seen >= 2;
  o.detail = "C1 B1 C2 B2 formula vs operator: " + tau.summary() + "; D4 tau-minus: " + minus.summary();
  return o;
}

Outcome c9_weyl(const RunConfig& cfg, const Run& run) {
  Outcome o;
  o.seconds = run.seconds;
  std::map<std::string, std::set<std::string>> sigmas;
  for (const auto& r : run.checks)
    if (starts_with(r.name, "sigma=")) sigmas[r.subject].insert(r.name.substr(0, r.name.find(' ')));
  const auto t = tally(run.checks, [](const CheckRecord& r) { return r.suite == "weyl"; });
  std::vector<std::string> thin;
  std::size_t cases = 0;
  for (const auto& c : cfg.cases) {
    if (!c.expect_error.empty() || !c.runs("weyl") || c.rank < 2) continue;
    ++cases;
    if (sigmas[c.name].size() < 3) thin.push_back(c.name);
  }
  o.ok = t.ok() && thin.empty() && cases > 0;
  o.detail = std::to_string(cases) + " cases of rank >= 2 with >= 3 sigma each, " + t.summary();
  for (const auto& n : thin) o.detail += ", too few sigma for " + n;
  return o;
}

Outcome c10_determinism(const RunConfig& cfg) {
  Outcome o;
  const auto t0 = Clock::now();
  RunOptions serial;
  serial.exec = Exec::serial;
  const auto a = run_config(cfg, RunOptions{});
  const auto b = run_config(cfg, RunOptions{});
  const auto c = run_config(cfg, serial);
  const bool same = render_jsonl(a, false) == render_jsonl(b, false) && render_text(a) == render_text(b);
  const bool same_serial = render_jsonl(a, false) == render_jsonl(c, false);

  // typed errors: configured error cases, plus the same points parsed without expect_error
  const auto errors = tally(a, [](const CheckRecord& r) { return r.suite == "config"; });
  std::size_t typed = 0, expected = 0;
  for (const auto& cs : cfg.cases) {
    if (cs.expect_error.empty()) continue;
    ++expected;
    try {
      make_spec(RootDatum(cs.series, cs.rank), cs);
    } catch (const RegularityError&) {
      typed += cs.expect_error == "regularity";
    } catch (const SpecError&) {
      typed += cs.expect_error == "spec";
    } catch (...) {
    }
  }
  bool wall = false;
  try {
    const RootDatum C1(Series::C, 1);
    chi_tau_formula(C1, stabilizer_from_spec(C1, TorusConstants{{1}}, {-1}, false), 1);
  } catch (const RegularityError&) {
    wall = true;
  }
  o.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  o.ok = same && same_serial && errors.ok() && typed == expected && expected > 0 && wall;
  o.detail = std::string("repeat ") + (same ? "identical" : "DIFFERS") + ", serial " + (same_serial ? "identical" : "DIFFERS") +
             "; typed errors " + std::to_string(typed) + "/" + std::to_string(expected) + "; wall point " +
             (wall ? "raises RegularityError" : "silent");
  return o;
}

void print(int n, const std::string& title, const Outcome& o) {
  const bool in_time = o.limit == 0 || o.seconds < o.limit;
  const bool ok = o.ok && in_time;
  std::ostringstream time;
  time.setf(std::ios::fixed);
  time.precision(2);
  time << o.seconds << " s";
  if (o.limit > 0) time << " / limit " << o.limit << " s";
  std::printf("criterion %2d %s  %s (%s): %s\n", n, ok ? "PASS" : "FAIL", title.c_str(), time.str().c_str(), o.detail.c_str());
  std::fflush(stdout);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  std::string path;
  int only = 0;
  app.add_option("--config", path, "default verification matrix")->required()->check(CLI::ExistingFile);
  app.add_option("--only", only, "run one criterion");
  CLI11_PARSE(app, argc, argv);

  const RunConfig cfg = load_config(path);
  bool all_ok = true;
  auto report = [&](int n, const std::string& title, const Outcome& o) {
    print(n, title, o);
    all_ok = all_ok && o.ok && (o.limit == 0 || o.seconds < o.limit);
  };
  auto want = [&](int n) { return only == 0 || only == n; };

  if (want(1)) report(1, "natural representation relations", c1_natural());
  if (want(2)) report(2, "PBW dimensions", c2_pbw());
  Run shap;
  if (want(3) || want(4)) shap = run_suite(cfg, "shapovalov", any_case);
  if (want(3)) report(3, "Shapovalov singular vectors", c3_singular(cfg, shap));
  if (want(4)) report(4, "classical limit of route corrections", c4_classical(shap));
  if (want(5)) {
    RunConfig sub = cfg;
    for (auto& c : sub.cases) c.depth = 4;
    const std::set<std::string> names = {"C2-levi", "C2-pseudo", "D4-levi"};
    report(5, "standard filtration", c5_filtration(run_suite(sub, "filtration", [&](const CaseConfig& c) { return names.count(c.name) != 0; })));
  }
  Run qop;
  if (want(6) || want(7)) qop = run_suite(cfg, "qop", any_case);
  if (want(6)) {
    Run sub;
    const auto keep = named_algebra({"C1", "B1", "C2", "B2"});
    std::set<std::string> names;
    for (const auto& c : cfg.cases)
      if (keep(c) && c.depth <= 4) names.insert(c.name);
    for (const auto& r : qop.checks)
      if (names.count(r.subject)) sub.checks.push_back(r);
    sub.seconds = qop.seconds;
    report(6, "Q intertwining and oracle", c6_intertwining(sub));
  }
  if (want(7)) report(7, "graded eigenvalues and minimal polynomial", c7_spectrum(qop));
  if (want(8)) {
    const auto keep = named_algebra({"C1", "B1", "C2", "B2", "D4"});
    report(8, "central characters", c8_characters(run_suite(cfg, "character", keep)));
  }
  if (want(9)) report(9, "Weyl-orbit independence", c9_weyl(cfg, run_suite(cfg, "weyl", any_case)));
  if (want(10)) report(10, "determinism and typed errors", c10_determinism(cfg));
  return all_ok ? 0 : 1;
}

#include "qgclass/config.hpp"

#include <toml.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>

namespace qgclass {

namespace {

std::string where(const toml::node& n) {
  const auto& src = n.source();
  return "line " + std::to_string(src.begin.line);
}

Rational rational_of(const toml::node& n, const std::string& what) {
  if (auto i = n.value<int64_t>()) return Rational(static_cast<long>(*i));
  if (auto s = n.value<std::string>()) {
    try {
      Rational r(*s);
      r.canonicalize();
      return r;
    } catch (const std::invalid_argument&) {
    }
  }
  throw SpecError(what + ": expected an integer or \"p/q\" string at " + where(n));
}

Coef coef_of(const toml::node& n, const std::string& what) {
  if (auto i = n.value<int64_t>()) return Coef(static_cast<long>(*i));
  if (auto s = n.value<std::string>()) {
    try {
      return Coef::parse(*s);
    } catch (const std::exception&) {
    }
  }
  throw SpecError(what + ": expected an integer or a Gaussian rational string at " + where(n));
}

template <class T, class F>
std::vector<T> list_of(const toml::table& t, const char* key, const std::string& what, F conv) {
  std::vector<T> out;
  const toml::node* n = t.get(key);
  if (!n) return out;
  const toml::array* arr = n->as_array();
  if (!arr) throw SpecError(what + "." + key + ": expected an array at " + where(*n));
  for (const auto& x : *arr) out.push_back(conv(x, what + "." + key));
  return out;
}

int int_field(const toml::table& t, const char* key, int fallback, const std::string& what) {
  const toml::node* n = t.get(key);
  if (!n) return fallback;
  auto v = n->value<int64_t>();
  if (!v) throw SpecError(what + "." + key + ": expected an integer at " + where(*n));
  return static_cast<int>(*v);
}

bool bool_field(const toml::table& t, const char* key, bool fallback, const std::string& what) {
  const toml::node* n = t.get(key);
  if (!n) return fallback;
  auto v = n->value<bool>();
  if (!v) throw SpecError(what + "." + key + ": expected a boolean at " + where(*n));
  return *v;
}

std::string string_field(const toml::table& t, const char* key, const std::string& what, bool required) {
  const toml::node* n = t.get(key);
  if (!n) {
    if (required) throw SpecError(what + ": missing field '" + key + "'");
    return {};
  }
  auto v = n->value<std::string>();
  if (!v) throw SpecError(what + "." + key + ": expected a string at " + where(*n));
  return *v;
}

const std::set<std::string> kCaseKeys = {"name",  "series", "rank",   "s",          "lambda1", "mu_bar",
                                         "depth", "kmax",   "suites", "pbw_height", "weyl",    "weyl_count",
                                         "oracle", "character_operator", "expect_error"};

CaseConfig parse_case(const toml::table& t, const toml::table* defaults, std::size_t index) {
  CaseConfig c;
  const std::string what = "case[" + std::to_string(index) + "]";
  for (const auto& [k, v] : t)
    if (!kCaseKeys.count(std::string(k.str()))) throw SpecError(what + ": unknown field '" + std::string(k.str()) + "' at " + where(v));
  c.name = string_field(t, "name", what, true);
  const std::string w = "case '" + c.name + "'";
  c.series = parse_series(string_field(t, "series", w, true));
  c.rank = int_field(t, "rank", 0, w);
  auto dflt = [&](const char* key, int value) { return defaults ? int_field(*defaults, key, value, "defaults") : value; };
  c.depth = int_field(t, "depth", dflt("depth", 4), w);
  c.kmax = int_field(t, "kmax", dflt("kmax", 3), w);
  c.pbw_height = int_field(t, "pbw_height", dflt("pbw_height", 6), w);
  c.weyl_count = int_field(t, "weyl_count", dflt("weyl_count", 3), w);
  if (c.depth < 1) throw SpecError(w + ": depth must be at least 1");
  if (c.kmax < 0) throw SpecError(w + ": kmax must be nonnegative");
  c.s = list_of<Coef>(t, "s", w, coef_of);
  if (t.get("lambda1")) c.lambda1 = list_of<Rational>(t, "lambda1", w, rational_of);
  if (t.get("mu_bar")) c.mu_bar = list_of<Rational>(t, "mu_bar", w, rational_of);
  if (c.lambda1 && c.mu_bar) throw SpecError(w + ": give lambda1 or mu_bar, not both");
  if (!c.lambda1 && !c.mu_bar) c.mu_bar = Weight(static_cast<std::size_t>(std::max(c.rank, 0)), 0);
  const auto suites = list_of<std::string>(t, "suites", w, [](const toml::node& n, const std::string& wh) {
    auto v = n.value<std::string>();
    if (!v) throw SpecError(wh + ": expected strings at " + where(n));
    return *v;
  });
  if (suites.empty() && !t.get("suites")) {
    c.suites.insert(kSuites.begin(), kSuites.end());
  } else {
    for (const auto& s : suites) {
      if (std::find(kSuites.begin(), kSuites.end(), s) == kSuites.end()) throw SpecError(w + ": unknown suite '" + s + "'");
      c.suites.insert(s);
    }
  }
  const auto perms = list_of<std::string>(t, "weyl", w, [](const toml::node& n, const std::string& wh) {
    auto v = n.value<std::string>();
    if (!v) throw SpecError(wh + ": expected strings like \"[2,-1]\" at " + where(n));
    return *v;
  });
  for (const auto& p : perms) c.weyl.push_back(parse_signed_perm(p, c.rank));
  c.oracle = bool_field(t, "oracle", c.rank == 1, w);
  c.character_operator = bool_field(t, "character_operator", true, w);
  c.expect_error = string_field(t, "expect_error", w, false);
  if (!c.expect_error.empty() && c.expect_error != "regularity" && c.expect_error != "spec")
    throw SpecError(w + ": expect_error must be \"regularity\" or \"spec\"");
  return c;
}

}  // namespace

SignedPerm parse_signed_perm(const std::string& text, int rank) {
  std::string body = text;
  if (body.size() < 2 || body.front() != '[' || body.back() != ']') throw SpecError("signed permutation '" + text + "' must look like [2,-1]");
  body = body.substr(1, body.size() - 2);
  SignedPerm s;
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) {
    int v = 0;
    try {
      std::size_t used = 0;
      v = std::stoi(item, &used);
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw SpecError("signed permutation '" + text + "': bad entry '" + item + "'");
    }
    if (v == 0) throw SpecError("signed permutation '" + text + "': entries are nonzero");
    s.perm.push_back(std::abs(v) - 1);
    s.sign.push_back(v < 0 ? -1 : 1);
  }
  if (static_cast<int>(s.perm.size()) != rank) throw SpecError("signed permutation '" + text + "' has the wrong length");
  return s;
}

WeightSpec make_spec(const RootDatum& D, const CaseConfig& c) {
  if (static_cast<int>(c.s.size()) != D.rank()) throw SpecError("case '" + c.name + "': s needs " + std::to_string(D.rank()) + " entries");
  const TorusConstants t{c.s};
  if (c.lambda1) {
    if (static_cast<int>(c.lambda1->size()) != D.rank()) throw SpecError("case '" + c.name + "': lambda1 has the wrong length");
    return stabilizer_from_spec(D, t, *c.lambda1);
  }
  if (static_cast<int>(c.mu_bar->size()) != D.rank()) throw SpecError("case '" + c.name + "': mu_bar has the wrong length");
  return spec_from_mu_bar(D, t, *c.mu_bar);
}

RunConfig parse_config(std::string_view text, const std::string& source) {
  toml::table root;
  try {
    root = toml::parse(text, source);
  } catch (const toml::parse_error& e) {
    throw ParseError(source + ":" + std::to_string(e.source().begin.line) + ": " + std::string(e.description()));
  }
  for (const auto& [k, v] : root)
    if (k.str() != "defaults" && k.str() != "case") throw SpecError("unknown top-level key '" + std::string(k.str()) + "' at " + where(v));
  const toml::table* defaults = root["defaults"].as_table();
  RunConfig cfg;
  if (const toml::node* cases = root.get("case")) {
    const toml::array* arr = cases->as_array();
    if (!arr) throw SpecError("'case' must be an array of tables ([[case]])");
    std::set<std::string> names;
    for (std::size_t i = 0; i < arr->size(); ++i) {
      const toml::table* t = (*arr)[i].as_table();
      if (!t) throw SpecError("case[" + std::to_string(i) + "] is not a table");
      CaseConfig c = parse_case(*t, defaults, i);
      if (!names.insert(c.name).second) throw SpecError("duplicate case name '" + c.name + "'");
      if (c.expect_error.empty()) {
        const RootDatum D(c.series, c.rank);
        (void)make_spec(D, c);
        for (const auto& sigma : c.weyl) validate_signed_perm(D, sigma);
      }
      cfg.cases.push_back(std::move(c));
    }
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path);
}

}  // namespace qgclass

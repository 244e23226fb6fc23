#pragma once

// Run configuration: a TOML document with a [defaults] table and one [[case]]
// table per weight to verify.

#include "qgclass/rootdatum.hpp"

#include <optional>
#include <set>

namespace qgclass {

inline const std::vector<std::string> kSuites = {"natural", "pbw", "shapovalov", "filtration", "qop", "character", "weyl"};

struct CaseConfig {
  std::string name;
  Series series = Series::C;
  int rank = 1;
  std::vector<Coef> s;
  std::optional<Weight> lambda1;  // exactly one of lambda1, mu_bar
  std::optional<Weight> mu_bar;
  int depth = 4;
  int kmax = 3;
  int pbw_height = 6;
  std::set<std::string> suites;
  std::vector<SignedPerm> weyl;  // empty: weyl_count automatic samples
  int weyl_count = 3;
  bool oracle = false;
  bool character_operator = true;
  std::string expect_error;  // "", "regularity" or "spec"

  bool runs(const std::string& suite) const { return suites.count(suite) != 0; }
};

struct RunConfig {
  std::vector<CaseConfig> cases;
};

/// Throws ParseError (with line) on malformed TOML, SpecError on bad fields
/// and RegularityError when a case without expect_error has a non-regular
/// weight.
RunConfig parse_config(std::string_view text, const std::string& source = "config");
RunConfig load_config(const std::string& path);

/// WeightSpec of a case; may throw SpecError or RegularityError.
WeightSpec make_spec(const RootDatum& D, const CaseConfig& c);

/// "[2,-1]": sigma(eps_1) = eps_2, sigma(eps_2) = -eps_1 (1-based).
SignedPerm parse_signed_perm(const std::string& text, int rank);

}  // namespace qgclass

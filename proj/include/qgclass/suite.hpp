#pragma once

// Orchestration of the verification suites over a RunConfig.

#include "qgclass/config.hpp"
#include "qgclass/uqtri.hpp"

namespace qgclass {

enum class Command { describe, singular, filtration, qop, character, weyl, verify_all };

Command parse_command(const std::string& name);

struct RunOptions {
  Command command = Command::verify_all;
  std::optional<int> depth;  // overrides every case
  std::optional<int> kmax;
  Exec exec = Exec::parallel;
};

/// Kostant partition count of beta (simple-root coordinates).
long kostant_count(const RootDatum& D, const RootCoords& beta);

/// Serre-quotient dimensions against Kostant counts up to height.
CheckList pbw_checks(const GradedBasis& U, int height);

/// Records of one case; construction errors become records, never escape.
CheckList run_case(const CaseConfig& c, const RunOptions& opt);
CheckList run_config(const RunConfig& cfg, const RunOptions& opt);

}  // namespace qgclass

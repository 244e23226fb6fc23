#pragma once

#include "qgclass/check.hpp"

#include <string>

namespace qgclass {

/// One line per record plus a count summary.  No timings.
std::string render_text(const CheckList& checks);
/// One JSON object per line; time_ms omitted when timings is false.
std::string render_jsonl(const CheckList& checks, bool timings = true);
/// 0 iff no record failed.
int exit_code(const CheckList& checks);

}  // namespace qgclass

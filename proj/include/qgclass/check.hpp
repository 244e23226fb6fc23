#pragma once

// One verification record, shared by all suites and the report writer.

#include <string>
#include <utility>
#include <vector>

namespace qgclass {

enum class Status { pass, fail, skipped, flagged };

const char* status_name(Status s);

struct CheckRecord {
  std::string subject;  // configured case
  std::string suite;
  std::string name;
  std::string statement;  // short tag of the property being checked
  Status status = Status::pass;
  std::vector<std::pair<std::string, std::string>> witness;
  double time_ms = 0;

  CheckRecord& with(std::string key, std::string value) {
    witness.emplace_back(std::move(key), std::move(value));
    return *this;
  }
};

using CheckList = std::vector<CheckRecord>;

inline CheckRecord make_check(std::string suite, std::string name, std::string statement, bool ok) {
  CheckRecord r;
  r.suite = std::move(suite);
  r.name = std::move(name);
  r.statement = std::move(statement);
  r.status = ok ? Status::pass : Status::fail;
  return r;
}

inline bool all_passed(const CheckList& checks) {
  for (const auto& c : checks)
    if (c.status == Status::fail) return false;
  return true;
}

}  // namespace qgclass

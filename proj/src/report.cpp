#include "qgclass/report.hpp"

#include <json.hpp>

#include <sstream>

namespace qgclass {

const char* status_name(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::skipped: return "skipped";
    case Status::flagged: return "flagged";
  }
  return "?";
}

std::string render_text(const CheckList& checks) {
  std::ostringstream os;
  std::size_t count[4] = {0, 0, 0, 0};
  for (const auto& c : checks) {
    ++count[static_cast<int>(c.status)];
    std::string tag = status_name(c.status);
    for (auto& ch : tag) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    os << tag << "  " << c.subject << "  " << c.suite << "  " << c.name << "  :: " << c.statement << "\n";
    for (const auto& [k, v] : c.witness) {
      os << "    " << k << ": ";
      // multi-line witnesses (describe) stay readable
      for (char ch : v) {
        os << ch;
        if (ch == '\n') os << "      ";
      }
      os << "\n";
    }
  }
  os << checks.size() << " checks: " << count[0] << " pass, " << count[1] << " fail, " << count[3] << " flagged, "
     << count[2] << " skipped\n";
  return os.str();
}

std::string render_jsonl(const CheckList& checks, bool timings) {
  std::ostringstream os;
  for (const auto& c : checks) {
    nlohmann::ordered_json j;
    j["case"] = c.subject;
    j["suite"] = c.suite;
    j["name"] = c.name;
    j["statement"] = c.statement;
    j["status"] = status_name(c.status);
    nlohmann::ordered_json w = nlohmann::ordered_json::object();
    for (const auto& [k, v] : c.witness) w[k] = v;
    j["witness"] = std::move(w);
    if (timings) j["time_ms"] = c.time_ms;
    os << j.dump() << "\n";
  }
  return os.str();
}

int exit_code(const CheckList& checks) { return all_passed(checks) ? 0 : 1; }

}  // namespace qgclass

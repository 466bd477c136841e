#include "diffcoh/report.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <sstream>

namespace diffcoh {

bool RunReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const ReportCheck& c) { return c.passed; });
}

std::string RunReport::text() const {
  std::ostringstream os;
  os << "command: " << command << "\n";
  os << "fixture: " << fixture << "\n";
  os << "digest: " << digest << "\n";
  for (const auto& n : notes) os << "note: " << n << "\n";
  for (const auto& t : tables) {
    os << "\n" << t.title << "\n";
    std::vector<std::size_t> width(t.columns.size());
    for (std::size_t c = 0; c < t.columns.size(); ++c) {
      width[c] = t.columns[c].size();
      for (const auto& r : t.rows) width[c] = std::max(width[c], r[c].size());
    }
    auto line = [&](const std::vector<std::string>& cells) {
      for (std::size_t c = 0; c < cells.size(); ++c) {
        os << "  " << cells[c];
        if (c + 1 < cells.size()) os << std::string(width[c] - cells[c].size(), ' ');
      }
      os << "\n";
    };
    line(t.columns);
    for (const auto& r : t.rows) line(r);
  }
  if (!checks.empty()) os << "\n";
  for (const auto& c : checks) {
    os << (c.passed ? "ok   " : "FAIL ") << c.name;
    if (!c.passed) os << "  [witness: " << c.witness << "]";
    os << "\n";
  }
  if (seconds) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", *seconds);
    os << "seconds: " << buf << "\n";
  }
  os << "result: " << (ok() ? "pass" : "fail") << "\n";
  return os.str();
}

nlohmann::ordered_json RunReport::json() const {
  nlohmann::ordered_json j;
  j["command"] = command;
  j["fixture"] = fixture;
  j["digest"] = digest;
  j["notes"] = notes;
  j["tables"] = nlohmann::ordered_json::array();
  for (const auto& t : tables) j["tables"].push_back({{"title", t.title}, {"columns", t.columns}, {"rows", t.rows}});
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : checks) {
    nlohmann::ordered_json e{{"name", c.name}, {"passed", c.passed}};
    if (!c.passed) e["witness"] = c.witness;
    j["checks"].push_back(e);
  }
  if (seconds) j["seconds"] = *seconds;
  j["result"] = ok() ? "pass" : "fail";
  return j;
}

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace diffcoh

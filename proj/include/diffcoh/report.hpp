#pragma once

// Run reports. The text and JSON renderings carry exactly the same fields.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace diffcoh {

struct ReportCheck {
  std::string name;
  bool passed = true;
  std::string witness;  // empty when passed
};

struct ReportTable {
  std::string title;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

struct RunReport {
  std::string command;
  std::string fixture;
  std::string digest;
  std::vector<std::string> notes;
  std::vector<ReportCheck> checks;
  std::vector<ReportTable> tables;
  std::optional<double> seconds;  // only when timing was requested

  void check(std::string name, bool passed, std::string witness = {}) {
    checks.push_back({std::move(name), passed, passed ? std::string() : std::move(witness)});
  }
  bool ok() const;
  std::string text() const;
  nlohmann::ordered_json json() const;
};

/// 64-bit FNV-1a of the bytes, as 16 hex digits.
std::string fnv1a_hex(std::string_view bytes);

}  // namespace diffcoh

#pragma once

// The five front-end commands. Each loads one fixture file and returns a
// report; fixture and parse errors escape as FixtureError, budget overruns as
// BudgetExceeded.

#include <cstdint>
#include <optional>
#include <string>

#include "diffcoh/report.hpp"
#include "diffcoh/scalar.hpp"

namespace diffcoh {

struct CommandOptions {
  Index max_degree = 3;
  std::uint64_t seed = 0;
  std::optional<std::size_t> budget;  // per-command default when unset
  std::string mode = "extensions";    // classify: extensions | semidirect-ops
  std::optional<Index> degree;        // vanest: overrides the fixture's degree
  bool timing = false;
};

RunReport cmd_check(const std::string& path, const CommandOptions& opts = {});
RunReport cmd_cohomology(const std::string& path, const CommandOptions& opts = {});
RunReport cmd_les(const std::string& path, const CommandOptions& opts = {});
RunReport cmd_classify(const std::string& path, const CommandOptions& opts = {});
RunReport cmd_vanest(const std::string& path, const CommandOptions& opts = {});

}  // namespace diffcoh

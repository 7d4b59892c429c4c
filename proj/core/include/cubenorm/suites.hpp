#pragma once

// Seeded verification suites over each layer. A suite is a fixed list of
// reports; with the same SuiteConfig it produces identical output.

#include "cubenorm/quartic.hpp"
#include "cubenorm/report.hpp"

#include <optional>
#include <string_view>
#include <vector>

namespace cubenorm {

enum class Suite { all, core, additive, sphere, asymptotics, bounds };

const char* suite_name(Suite s);
std::optional<Suite> parse_suite(std::string_view name);

struct SuiteConfig {
  std::uint64_t seed = 0;
  OptimizerConfig optimizer{};
  int exact_limit = 20;
};

std::vector<BoundReport> run_suite(Suite suite, const SuiteConfig& cfg = {});

}  // namespace cubenorm

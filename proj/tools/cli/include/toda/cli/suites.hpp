#pragma once

// Seeded property suites run by `toda verify`.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace toda::cli {

struct PropertyResult {
  std::string name;
  std::size_t cases = 0;
  double measured = 0.0;   ///< max over cases
  double tolerance = 0.0;
  bool at_least = false;   ///< pass when measured >= tolerance (negative controls)
  bool pass = false;
  std::string note;
};

struct SuiteReport {
  std::string suite;
  std::vector<std::size_t> sizes;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  std::vector<PropertyResult> properties;

  bool pass() const;
};

struct SuiteOptions {
  std::optional<std::size_t> n;
  std::optional<std::size_t> trials;
  std::uint64_t seed = 1;
  /// Swap the Poisson tensors of the Jacobi suite for corrupted copies.
  bool negative_control = false;
  unsigned jobs = 1;
};

std::vector<std::string> suite_names();  ///< without "all"

/// Throws TodaError(InvalidInput) for an unknown suite or unusable size.
SuiteReport run_suite(const std::string& name, const SuiteOptions& opts);
std::vector<SuiteReport> run_suites(const std::string& name, const SuiteOptions& opts);

nlohmann::json to_json(const std::vector<SuiteReport>& reports);
std::string to_table(const std::vector<SuiteReport>& reports);

}  // namespace toda::cli

#pragma once

// Randomized certification suites. Each instance draws from its own derived
// seed, so a failure is reproducible from the (seed, instance) pair printed
// in the report.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace coocfeat {

enum class Suite { Lemma1, Theorem1, Theorem2, Theorem34, Oracle };

std::string_view to_string(Suite suite);
Suite parse_suite(std::string_view name);

struct IdentityCheck {
  std::string name;
  double tolerance = 0.0;
  double max_residual = 0.0;
  std::size_t checked = 0;
  std::size_t failures = 0;
  std::optional<std::uint64_t> failing_seed;  // derived seed of the first failure
  std::optional<std::size_t> failing_instance;

  bool passed() const { return failures == 0; }
  void record(double residual, std::uint64_t seed, std::size_t instance);
};

struct SuiteReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::size_t instances = 0;
  std::size_t skipped = 0;  // instances with a degenerate draw
  std::vector<IdentityCheck> checks;

  bool passed() const;
};

struct VerifyOptions {
  // Instances per suite; for the oracle suite, random f samples per instance.
  std::size_t trials = 200;
  std::uint64_t seed = 7;
  // Added to every identity's left-hand side: a self-test of the failure path.
  double fault = 0.0;
};

inline constexpr std::size_t kOracleInstances = 50;

SuiteReport run_suite(Suite suite, const VerifyOptions& options);

}  // namespace coocfeat

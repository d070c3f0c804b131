#pragma once

// Subcommands of the commlen tool as plain functions, so tests can drive
// them without spawning processes. Each returns the JSON lines it would
// print; failures surface as commlen exceptions and map to exit codes via
// exit_code_for.

#include <cstdint>
#include <exception>
#include <optional>
#include <string>
#include <vector>

#include "commlen/serialize.hpp"

namespace commlen::cli {

enum ExitCode : int {
  kOk = 0,
  kVerificationFailed = 2,
  kPrecondition = 3,
  kInvariant = 4,
};

int exit_code_for(const std::exception& e);

struct GenOptions {
  std::size_t n = 3;
  std::int64_t c = 1;
  std::uint64_t seed = 0;
  Algebra algebra;
  // v = u = gamma = identity, so the element is diag(1, ..., 1, delta).
  bool diagonal = false;
};
Json cmd_gen(const GenOptions& opts);

// Input: {"algebra", "matrix"} or a bare array of rows.
Json cmd_decompose(const Json& input, const Algebra& fallback);

// Input: {"algebra", "pairs", "tau"}, or a factor result whose certificate
// target is diag(1, ..., 1, tau).
Json cmd_certify_lower(const Json& input);

enum class FactorMode { GL, E, Stable };
std::optional<FactorMode> parse_factor_mode(const std::string& text);
Json cmd_factor(const Json& instance, FactorMode mode);

struct BoundsOptions {
  std::size_t n = 2;
  std::int64_t c = 1;
  std::int64_t d = 1;
};
Json cmd_bounds(const BoundsOptions& opts);

struct SelftestOptions {
  std::uint64_t seed = 0;
  int cases = 40;  // per check and size
};
struct Report {
  std::vector<Json> lines;
  bool ok = true;
};
Report cmd_selftest(const SelftestOptions& opts);

// Re-verifies every certificate-bearing JSON line: factor and
// certify-lower results, decompositions and bare {"pairs", "target"}.
Report verify_lines(const std::vector<Json>& lines);

// Parses line-delimited JSON; blank lines are skipped.
std::vector<Json> parse_lines(const std::string& text);

}  // namespace commlen::cli

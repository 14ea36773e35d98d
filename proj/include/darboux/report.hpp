#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace darboux {

/// One verification check. For a check that ran, pass is exactly
/// max_residual <= tolerance. A check that cannot run on the given input
/// (for instance a cycle check on a pair whose Gauss map is constant) is
/// marked skipped with a note explaining why and counts as vacuously
/// passing; a failing check may also carry a note locating the failure.
struct CheckResult {
  std::string name;
  double max_residual = 0;
  double tolerance = 0;
  bool pass = false;
  bool skipped = false;
  std::string note;
};

/// Grid point left out of a sweep, with the reason (typically a degeneracy
/// error thrown while evaluating there).
struct ExcludedPoint {
  double u = 0, v = 0;
  std::string reason;
};

/// Outcome of one suite run. Deterministic: the same (suite, pair, grid,
/// seed) produces a byte-identical JSON serialization.
struct VerificationReport {
  std::string suite;
  std::string pair;
  int grid_n = 0;
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;
  std::vector<ExcludedPoint> excluded;

  bool all_pass() const;

  /// Versioned object ("schema": 1) with lexicographically sorted keys and
  /// no timing data, so reports diff cleanly across runs.
  std::string to_json() const;
};

}  // namespace darboux

#pragma once

#include "darboux/report.hpp"

namespace darboux {

/// Names accepted by run_suite, "all" last.
const std::vector<std::string>& suite_names();

/// Runs one named verification suite against a catalog pair and returns the
/// report. "all" concatenates every suite in a fixed order. The algebra
/// suite ignores the grid but uses the seed; the geometric suites sweep the
/// pair's n x n grid deterministically. Throws UnknownSuite or UnknownPair.
VerificationReport run_suite(const std::string& suite,
                             const std::string& pair_name, int grid_n,
                             std::uint64_t seed);

}  // namespace darboux

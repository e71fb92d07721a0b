#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "wyskew/skew.hpp"

namespace wyskew {

/// Randomized property suites for the theorems the functionals rest on.
enum class CheckSuite {
    bipartite,   ///< two-subsystem subadditivity for pure states (plus the
                 ///< equal-dimension collective form, which also holds at N=2)
    concavity,   ///< concavity of the entropy in the density matrix
    identities,  ///< symmetric/correlation slack agreement and the
                 ///< commutator-vs-trace route of the entropy
};

std::string to_string(CheckSuite suite);
CheckSuite check_suite_from_string(const std::string &name);

struct CheckOutcome {
    CheckSuite suite;
    std::size_t trials;
    std::uint64_t seed;
    std::size_t failures;
    std::vector<std::string> failure_notes;
    /// (suggested file name, JSON text) reproducers for every failed trial.
    std::vector<std::pair<std::string, std::string>> reproducers;
};

/// Runs `trials` randomized trials at tolerance 1e-10. Deterministic for a
/// fixed (suite, trials, seed).
CheckOutcome run_check_suite(CheckSuite suite, std::size_t trials, std::uint64_t seed);

}  // namespace wyskew

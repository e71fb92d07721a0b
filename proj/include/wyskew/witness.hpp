#pragma once

#include <string>
#include <vector>

#include "wyskew/skew.hpp"

namespace wyskew {

/// One reproduced quantity: |computed - expected| must stay within tolerance.
struct CheckItem {
    std::string name;
    double expected;
    double computed;
    double abs_error;
    double tolerance;
    bool ok;
};

/// Machine-checked reproduction of the built-in 3-qubit witness: every
/// quantity of the known counterexample, with a tolerance matched to how the
/// value is pinned (exact rationals at 1e-12, six-figure decimals at 1e-5).
struct WitnessReport {
    std::vector<CheckItem> items;
    bool all_match;

    double norm_check;
    double first_moment;
    double second_moment;
    double variance_lhs;
    HermitianMatrix gamma;
    HermitianMatrix gamma_sqrt;
    double rhs;
    double slack;

    SlackReport symmetric;
    /// Same state and observable through the n-partite functional. For this
    /// permutation-symmetric state gamma = 3 rho_1, so both right sides
    /// coincide; emitted as a diagnostic, not one of the reproduction checks.
    SlackReport n_partite_diagnostic;
};

/// The 3-qubit witness state: amplitude 2/sqrt(55) on |uuu>, 4/sqrt(55) on
/// each basis state with two u's, 1/sqrt(55) with one u, 0 on |ddd>
/// (u = local index 0, d = 1).
PureState witness_state();

/// K = |u><u| = diag(1, 0).
HermitianMatrix witness_observable();

/// Closed-form value of the witness slack,
/// 384/3025 - (3/55) (37 - (37+sqrt(410))^2 / (55+2 sqrt(410))),
/// derived from the exact 2x2 square root (A + sqrt(det) I)/sqrt(tr + 2 sqrt(det)).
/// Pure arithmetic; shares no code with the matrix pipeline.
double closed_form_witness_slack();

WitnessReport verify_witness();

}  // namespace wyskew

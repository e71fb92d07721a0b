#include "wyskew/witness.hpp"

#include <bit>
#include <cmath>

namespace wyskew {

namespace {

// Amplitude numerators keyed by the number of sites in the |u> state.
constexpr int kNumerators[4] = {0, 1, 4, 2};

void add_check(WitnessReport &report, const std::string &name, double expected, double computed,
               double tolerance) {
    const double err = std::abs(computed - expected);
    report.items.push_back(CheckItem{name, expected, computed, err, tolerance, err <= tolerance});
}

}  // namespace

PureState witness_state() {
    const double inv_root = 1.0 / std::sqrt(55.0);
    std::vector<Complex> amps(8);
    for (unsigned idx = 0; idx < 8; ++idx) {
        const unsigned ups = 3u - std::popcount(idx);
        amps[idx] = kNumerators[ups] * inv_root;
    }
    return PureState({2, 2, 2}, std::move(amps), PureState::Normalization::strict);
}

HermitianMatrix witness_observable() {
    const double diag[] = {1.0, 0.0};
    return HermitianMatrix::diagonal(diag);
}

double closed_form_witness_slack() {
    const double root410 = std::sqrt(410.0);
    const double ratio = (37.0 + root410) * (37.0 + root410) / (55.0 + 2.0 * root410);
    return 384.0 / 3025.0 - (3.0 / 55.0) * (37.0 - ratio);
}

WitnessReport verify_witness() {
    const PureState psi = witness_state();
    const HermitianMatrix k = witness_observable();

    WitnessReport report{.items = {},
                         .all_match = false,
                         .norm_check = 0.0,
                         .first_moment = 0.0,
                         .second_moment = 0.0,
                         .variance_lhs = 0.0,
                         .gamma = HermitianMatrix(2),
                         .gamma_sqrt = HermitianMatrix(2),
                         .rhs = 0.0,
                         .slack = 0.0,
                         .symmetric = {},
                         .n_partite_diagnostic = {}};

    // Exact normalization in integer arithmetic: 2^2 + 3*4^2 + 3*1^2 = 55.
    int numerator_square_sum = 0;
    for (unsigned ups = 0; ups <= 3; ++ups) {
        const int multiplicity = (ups == 0 || ups == 3) ? 1 : 3;
        numerator_square_sum += multiplicity * kNumerators[ups] * kNumerators[ups];
    }
    add_check(report, "amplitude_numerator_square_sum", 55.0, numerator_square_sum, 0.0);

    double norm2 = 0.0;
    for (Complex a : psi.amplitudes()) norm2 += std::norm(a);
    report.norm_check = norm2;
    add_check(report, "norm", 1.0, norm2, 1e-14);

    const CollectiveMoments m = collective_expectations(psi, k);
    report.first_moment = m.first;
    report.second_moment = m.second;
    report.variance_lhs = m.second - m.first * m.first;
    add_check(report, "first_moment", 111.0 / 55.0, report.first_moment, 1e-12);
    add_check(report, "second_moment", 231.0 / 55.0, report.second_moment, 1e-12);
    add_check(report, "variance_lhs", 384.0 / 3025.0, report.variance_lhs, 1e-12);

    const DensityMatrix gamma = one_particle_dm(psi);
    report.gamma = gamma.matrix();
    const double gamma_expected[2][2] = {{3.0 / 55.0 * 37.0, 3.0 / 55.0 * 16.0},
                                         {3.0 / 55.0 * 16.0, 3.0 / 55.0 * 18.0}};
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
            add_check(report, "gamma[" + std::to_string(i) + "][" + std::to_string(j) + "]",
                      gamma_expected[i][j], report.gamma(i, j).real(), 1e-12);
        }
    }

    report.gamma_sqrt = sqrt_psd(gamma.matrix());
    // Entries as printed to six significant figures, scaled by sqrt(3/55).
    const double scale = std::sqrt(3.0 / 55.0);
    const double root_expected[2][2] = {{scale * 5.85827, scale * 1.63729},
                                        {scale * 1.63729, scale * 3.91399}};
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
            add_check(report, "gamma_sqrt[" + std::to_string(i) + "][" + std::to_string(j) + "]",
                      root_expected[i][j], report.gamma_sqrt(i, j).real(), 1e-5);
        }
    }

    report.rhs = trace_product_real(report.gamma, k, k) -
                 trace_product_real(report.gamma_sqrt, k, report.gamma_sqrt, k);
    add_check(report, "rhs", 0.146221, report.rhs, 1e-5);

    report.slack = report.variance_lhs - report.rhs;
    add_check(report, "slack", -0.019279, report.slack, 1e-5);

    report.symmetric = symmetric_slack(psi, k);
    add_check(report, "violated", 1.0, report.symmetric.violated ? 1.0 : 0.0, 0.5);

    const std::vector<HermitianMatrix> ks(psi.n_sites(), k);
    report.n_partite_diagnostic = n_partite_slack(psi, ks);

    report.all_match = true;
    for (const CheckItem &item : report.items) report.all_match = report.all_match && item.ok;
    return report;
}

}  // namespace wyskew

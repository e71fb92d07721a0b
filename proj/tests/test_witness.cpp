#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "wyskew/witness.hpp"

using namespace wyskew;

TEST_CASE("witness state amplitudes and normalization") {
    const PureState psi = witness_state();
    REQUIRE(psi.total_dim() == 8);
    const double inv_root = 1.0 / std::sqrt(55.0);
    CHECK(psi.amplitude(0) == Complex(2.0 * inv_root, 0.0));  // |uuu>
    CHECK(psi.amplitude(1) == Complex(4.0 * inv_root, 0.0));  // |uud>
    CHECK(psi.amplitude(3) == Complex(1.0 * inv_root, 0.0));  // |udd>
    CHECK(psi.amplitude(7) == Complex(0.0, 0.0));             // |ddd>

    double norm2 = 0.0;
    for (Complex a : psi.amplitudes()) norm2 += std::norm(a);
    CHECK(std::abs(norm2 - 1.0) <= 1e-14);
}

TEST_CASE("witness observable is the projector onto up") {
    const HermitianMatrix k = witness_observable();
    CHECK(k(0, 0) == Complex(1.0, 0.0));
    CHECK(k(1, 1) == Complex(0.0, 0.0));
    CHECK(k(0, 1) == Complex(0.0, 0.0));
    // Idempotent in exact arithmetic.
    CHECK(std::abs(trace_product(k, k) - trace_product(k)) == 0.0);
}

TEST_CASE("every reproduction check passes") {
    const WitnessReport report = verify_witness();
    CHECK(report.all_match);
    for (const CheckItem &item : report.items) {
        INFO(item.name, ": expected ", item.expected, " computed ", item.computed);
        CHECK(item.ok);
        CHECK(item.abs_error == std::abs(item.computed - item.expected));
    }
    CHECK(report.items.size() >= 15);
}

TEST_CASE("reported quantities carry the expected values") {
    const WitnessReport report = verify_witness();
    CHECK(std::abs(report.norm_check - 1.0) <= 1e-14);
    CHECK(std::abs(report.first_moment - 111.0 / 55.0) <= 1e-12);
    CHECK(std::abs(report.second_moment - 231.0 / 55.0) <= 1e-12);
    CHECK(std::abs(report.variance_lhs - 384.0 / 3025.0) <= 1e-12);
    CHECK(std::abs(report.gamma(0, 0).real() - 3.0 / 55.0 * 37.0) <= 1e-12);
    CHECK(std::abs(report.gamma(0, 1).real() - 3.0 / 55.0 * 16.0) <= 1e-12);
    CHECK(std::abs(report.gamma(1, 1).real() - 3.0 / 55.0 * 18.0) <= 1e-12);
    CHECK(std::abs(report.rhs - 0.146221) <= 1e-5);
    CHECK(std::abs(report.slack - (-0.019279)) <= 1e-5);
}

TEST_CASE("the witness slack matches the closed form") {
    const WitnessReport report = verify_witness();
    CHECK(std::abs(report.slack - closed_form_witness_slack()) <= 1e-12);
    CHECK(closed_form_witness_slack() ==
          doctest::Approx(-0.019278664639048843).epsilon(1e-13));
}

TEST_CASE("witness route and skew-module route give one number") {
    const WitnessReport report = verify_witness();
    const SlackReport direct = symmetric_slack(witness_state(), witness_observable());
    CHECK(std::abs(report.slack - direct.slack) <= 1e-12);
    CHECK(direct.violated);
    CHECK(report.symmetric.violated);
}

TEST_CASE("n-partite diagnostic coincides with the symmetric slack here") {
    // gamma = 3 rho_1 for this permutation-symmetric state, so
    // gamma^{1/2} = sqrt(3) rho_1^{1/2} and both right sides equal three
    // times the one-site skew information.
    const WitnessReport report = verify_witness();
    CHECK(std::abs(report.n_partite_diagnostic.slack - report.symmetric.slack) <= 1e-12);
    CHECK(std::abs(report.n_partite_diagnostic.rhs - report.symmetric.rhs) <= 1e-12);
    CHECK(report.n_partite_diagnostic.violated);

    const DensityMatrix rho1 = reduced_one_site(witness_state(), 0);
    const double per_site = -wy_entropy(rho1, witness_observable());
    CHECK(std::abs(report.n_partite_diagnostic.rhs - 3.0 * per_site) <= 1e-12);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "wyskew/rng.hpp"
#include "wyskew/states.hpp"
#include "wyskew/witness.hpp"

using namespace wyskew;

namespace {

PureState up_up_up() {
    std::vector<Complex> amps(8);
    amps[0] = 1.0;
    return PureState({2, 2, 2}, std::move(amps));
}

PureState ghz3() {
    std::vector<Complex> amps(8);
    amps[0] = amps[7] = 1.0 / std::sqrt(2.0);
    return PureState({2, 2, 2}, std::move(amps));
}

PureState bell() {
    std::vector<Complex> amps(4);
    amps[0] = amps[3] = 1.0 / std::sqrt(2.0);
    return PureState({2, 2}, std::move(amps));
}

double max_entry_distance(const HermitianMatrix &a, const HermitianMatrix &b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j)
            worst = std::max(worst, std::abs(a(i, j) - b(i, j)));
    return worst;
}

}  // namespace

TEST_CASE("construction validates shape and norm") {
    CHECK_THROWS_AS(PureState({2}, {1.0, 0.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(PureState({2}, {0.9, 0.0}), std::invalid_argument);  // strict by default
    CHECK_THROWS_AS(PureState({2}, {0.0, 0.0}, PureState::Normalization::normalize),
                    std::invalid_argument);

    const PureState rescaled({2}, {3.0, 4.0}, PureState::Normalization::normalize);
    CHECK(rescaled.amplitude(0).real() == doctest::Approx(0.6).epsilon(1e-15));
    CHECK(rescaled.amplitude(1).real() == doctest::Approx(0.8).epsilon(1e-15));
}

TEST_CASE("pure to density on small states") {
    const DensityMatrix up = pure_to_density(PureState({2}, {1.0, 0.0}));
    CHECK(up.matrix()(0, 0) == Complex(1.0, 0.0));
    CHECK(up.matrix()(1, 1) == Complex(0.0, 0.0));

    const double s = 1.0 / std::sqrt(2.0);
    const DensityMatrix plus = pure_to_density(PureState({2}, {s, s}));
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            CHECK(plus.matrix()(i, j).real() == doctest::Approx(0.5).epsilon(1e-12));

    const DensityMatrix rho = pure_to_density(witness_state());
    CHECK(rho.matrix()(0, 0).real() == doctest::Approx(4.0 / 55.0).epsilon(1e-14));
    // Rank one: rho^2 = rho.
    const ComplexMatrix square = rho.matrix().matrix() * rho.matrix().matrix();
    ComplexMatrix diff = square;
    diff -= rho.matrix().matrix();
    CHECK(diff.frobenius_norm() <= 1e-10);
}

TEST_CASE("partial trace on product, entangled and witness states") {
    const PureState product = tensor_product(PureState({2}, {1.0, 0.0}),
                                             PureState({2}, {0.0, 1.0}));
    const DensityMatrix keep_first = partial_trace(pure_to_density(product), SiteSubset({0}));
    CHECK(keep_first.matrix()(0, 0).real() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(keep_first.matrix()(1, 1).real() == doctest::Approx(0.0).epsilon(1e-14));

    const DensityMatrix keep_second = partial_trace(pure_to_density(product), SiteSubset({1}));
    CHECK(keep_second.matrix()(1, 1).real() == doctest::Approx(1.0).epsilon(1e-14));

    const DensityMatrix half = partial_trace(pure_to_density(bell()), SiteSubset({0}));
    CHECK(half.matrix()(0, 0).real() == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(half.matrix()(1, 1).real() == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(std::abs(half.matrix()(0, 1)) <= 1e-14);

    HermitianMatrix expected(2);
    expected.set(0, 0, 37.0 / 55.0);
    expected.set(0, 1, 16.0 / 55.0);
    expected.set(1, 1, 18.0 / 55.0);
    const DensityMatrix rho1 = partial_trace(pure_to_density(witness_state()), SiteSubset({0}));
    CHECK(max_entry_distance(rho1.matrix(), expected) <= 1e-14);

    CHECK_THROWS_AS(partial_trace(pure_to_density(bell()), SiteSubset({2})), std::out_of_range);
    CHECK_THROWS_AS(SiteSubset({}), std::invalid_argument);
    CHECK_THROWS_AS(SiteSubset({1, 1}), std::invalid_argument);
}

TEST_CASE("reduced one-site matrices") {
    // The witness state is permutation symmetric: all sites agree.
    const DensityMatrix site0 = reduced_one_site(witness_state(), 0);
    for (std::size_t site = 1; site < 3; ++site) {
        const DensityMatrix other = reduced_one_site(witness_state(), site);
        CHECK(max_entry_distance(site0.matrix(), other.matrix()) <= 1e-14);
    }

    const DensityMatrix ghz_site = reduced_one_site(ghz3(), 0);
    CHECK(ghz_site.matrix()(0, 0).real() == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(ghz_site.matrix()(1, 1).real() == doctest::Approx(0.5).epsilon(1e-12));

    const DensityMatrix up_site = reduced_one_site(up_up_up(), 2);
    CHECK(up_site.matrix()(0, 0).real() == doctest::Approx(1.0).epsilon(1e-14));

    CHECK_THROWS_AS(reduced_one_site(ghz3(), 3), std::out_of_range);
}

TEST_CASE("reduced one-site equals the partial trace route") {
    Rng rng(404);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = 2 + rng.next_u64() % 3;
        std::vector<std::size_t> dims;
        for (std::size_t i = 0; i < n; ++i) dims.push_back(2 + rng.next_u64() % 2);
        const PureState psi = random_pure_state(rng, dims);
        const DensityMatrix full = pure_to_density(psi);
        for (std::size_t site = 0; site < n; ++site) {
            const DensityMatrix direct = reduced_one_site(psi, site);
            const DensityMatrix traced = partial_trace(full, SiteSubset({site}));
            CHECK(max_entry_distance(direct.matrix(), traced.matrix()) <= 1e-12);
        }
    }
}

TEST_CASE("partial trace preserves trace, hermiticity and positivity") {
    Rng rng(808);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 2 + rng.next_u64() % 3;
        std::vector<std::size_t> dims;
        for (std::size_t i = 0; i < n; ++i) dims.push_back(2 + rng.next_u64() % 2);
        const PureState psi = random_pure_state(rng, dims);

        std::vector<std::size_t> keep;
        for (std::size_t i = 0; i < n; ++i)
            if (rng.uniform() < 0.5) keep.push_back(i);
        if (keep.empty()) keep.push_back(0);

        const DensityMatrix reduced = partial_trace(pure_to_density(psi), SiteSubset(keep));
        CHECK(std::abs(reduced.matrix().trace_real() - 1.0) <= 1e-12);
        for (double lambda : eig_hermitian(reduced.matrix()).eigenvalues)
            CHECK(lambda >= -1e-12);
    }
}

TEST_CASE("reduced matrices of product states are pure") {
    Rng rng(1212);
    for (int trial = 0; trial < 30; ++trial) {
        const PureState left = random_pure_state(rng, {2 + rng.next_u64() % 2});
        const PureState right = random_pure_state(rng, {2 + rng.next_u64() % 2});
        const PureState product = tensor_product(left, right);
        for (std::size_t site = 0; site < 2; ++site) {
            const HermitianMatrix rho = reduced_one_site(product, site).matrix();
            const ComplexMatrix square = rho.matrix() * rho.matrix();
            ComplexMatrix diff = square;
            diff -= rho.matrix();
            CHECK(diff.frobenius_norm() <= 1e-9);
        }
    }
}

TEST_CASE("one-particle density matrix") {
    HermitianMatrix expected(2);
    expected.set(0, 0, 3.0 / 55.0 * 37.0);
    expected.set(0, 1, 3.0 / 55.0 * 16.0);
    expected.set(1, 1, 3.0 / 55.0 * 18.0);
    const DensityMatrix gamma = one_particle_dm(witness_state());
    CHECK(max_entry_distance(gamma.matrix(), expected) <= 1e-12);
    CHECK(gamma.declared_trace() == 3.0);

    const DensityMatrix up_gamma = one_particle_dm(up_up_up());
    CHECK(up_gamma.matrix()(0, 0).real() == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(up_gamma.matrix()(1, 1).real() == doctest::Approx(0.0).epsilon(1e-14));

    const DensityMatrix ghz_gamma = one_particle_dm(ghz3());
    CHECK(ghz_gamma.matrix()(0, 0).real() == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(ghz_gamma.matrix()(1, 1).real() == doctest::Approx(1.5).epsilon(1e-12));

    const PureState uneven = tensor_product(PureState({2}, {1.0, 0.0}),
                                            PureState({3}, {1.0, 0.0, 0.0}));
    CHECK_THROWS_AS(one_particle_dm(uneven), std::invalid_argument);
}

TEST_CASE("collective expectations on the named states") {
    const double diag[] = {1.0, 0.0};
    const HermitianMatrix k = HermitianMatrix::diagonal(diag);

    const CollectiveMoments witness = collective_expectations(witness_state(), k);
    CHECK(std::abs(witness.first - 111.0 / 55.0) <= 1e-12);
    CHECK(std::abs(witness.second - 231.0 / 55.0) <= 1e-12);

    const CollectiveMoments up = collective_expectations(up_up_up(), k);
    CHECK(up.first == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(up.second == doctest::Approx(9.0).epsilon(1e-14));

    const CollectiveMoments ghz = collective_expectations(ghz3(), k);
    CHECK(ghz.first == doctest::Approx(1.5).epsilon(1e-13));
    CHECK(ghz.second == doctest::Approx(4.5).epsilon(1e-13));

    CHECK_THROWS_AS(collective_expectations(witness_state(), HermitianMatrix::identity(3)),
                    std::invalid_argument);
}

TEST_CASE("collective expectations agree with the materialized operator") {
    Rng rng(616);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = 2 + rng.next_u64() % 2;
        const std::size_t d = 2 + rng.next_u64() % 3;
        const std::vector<std::size_t> dims(n, d);
        const PureState psi = random_pure_state(rng, dims);
        if (psi.total_dim() > 64) continue;
        const HermitianMatrix k = random_hermitian(rng, d);

        const CollectiveMoments fast = collective_expectations(psi, k);

        const ComplexMatrix big = oracle::collective_operator(k, dims);
        const std::vector<Complex> m_psi = oracle::matvec(big, psi.amplitudes());
        const double first = oracle::inner(psi.amplitudes(), m_psi).real();
        const double second = oracle::inner(m_psi, m_psi).real();

        CHECK(std::abs(fast.first - first) <= 1e-10);
        CHECK(std::abs(fast.second - second) <= 1e-10);
        CHECK(fast.second >= fast.first * fast.first - 1e-12);  // variance is non-negative
    }
}

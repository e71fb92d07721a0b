#include "wyskew/check.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "wyskew/io.hpp"
#include "wyskew/rng.hpp"

namespace wyskew {

namespace {

constexpr double kPropertyTol = 1e-10;

std::string trial_tag(CheckSuite suite, std::size_t trial) {
    std::ostringstream name;
    name << "check_" << to_string(suite) << "_trial" << trial;
    return name.str();
}

void note_failure(CheckOutcome &outcome, std::size_t trial, const std::string &what) {
    ++outcome.failures;
    std::ostringstream msg;
    msg << "trial " << trial << ": " << what;
    outcome.failure_notes.push_back(msg.str());
}

void dump_state(CheckOutcome &outcome, CheckSuite suite, std::size_t trial, const char *label,
                const PureState &psi) {
    outcome.reproducers.emplace_back(trial_tag(suite, trial) + "_" + label + ".json",
                                     io::write_state_file(psi));
}

void dump_matrix(CheckOutcome &outcome, CheckSuite suite, std::size_t trial, const char *label,
                 const HermitianMatrix &m) {
    outcome.reproducers.emplace_back(trial_tag(suite, trial) + "_" + label + ".json",
                                     io::write_observable_file(m));
}

void run_bipartite_trial(CheckOutcome &outcome, std::size_t trial, Rng &rng) {
    // (a) general bipartite subadditivity with independent observables.
    const std::size_t d1 = 2 + rng.next_u64() % 3;
    const std::size_t d2 = 2 + rng.next_u64() % 3;
    const PureState psi = random_pure_state(rng, {d1, d2});
    const HermitianMatrix k1 = random_hermitian(rng, d1);
    const HermitianMatrix k2 = random_hermitian(rng, d2);
    const SlackReport two_site = bipartite_slack(psi, k1, k2);
    if (two_site.slack < -kPropertyTol) {
        std::ostringstream why;
        why << "bipartite slack " << two_site.slack << " below -1e-10";
        note_failure(outcome, trial, why.str());
        dump_state(outcome, CheckSuite::bipartite, trial, "state", psi);
        dump_matrix(outcome, CheckSuite::bipartite, trial, "observable1", k1);
        dump_matrix(outcome, CheckSuite::bipartite, trial, "observable2", k2);
    }

    // Collective (equal-dimension, shared observable) form, which also holds
    // for every two-site pure state.
    const std::size_t d = 2 + rng.next_u64() % 3;
    const PureState phi = random_pure_state(rng, {d, d});
    const HermitianMatrix k = random_hermitian(rng, d);
    const SlackReport collective = symmetric_slack(phi, k);
    if (collective.slack < -kPropertyTol) {
        std::ostringstream why;
        why << "two-site symmetric slack " << collective.slack << " below -1e-10";
        note_failure(outcome, trial, why.str());
        dump_state(outcome, CheckSuite::bipartite, trial, "state_collective", phi);
        dump_matrix(outcome, CheckSuite::bipartite, trial, "observable_collective", k);
    }
}

void run_concavity_trial(CheckOutcome &outcome, std::size_t trial, Rng &rng) {
    const std::size_t d = 2 + rng.next_u64() % 2;
    const DensityMatrix rho1 = random_density_matrix(rng, d);
    const DensityMatrix rho2 = random_density_matrix(rng, d);
    const HermitianMatrix k = random_hermitian(rng, d);
    const double lambda = rng.uniform();
    const double gap = concavity_probe(rho1, rho2, k, lambda);
    if (gap < -kPropertyTol) {
        std::ostringstream why;
        why << "concavity gap " << gap << " below -1e-10 at lambda " << lambda;
        note_failure(outcome, trial, why.str());
        dump_matrix(outcome, CheckSuite::concavity, trial, "rho1", rho1.matrix());
        dump_matrix(outcome, CheckSuite::concavity, trial, "rho2", rho2.matrix());
        dump_matrix(outcome, CheckSuite::concavity, trial, "observable", k);
    }
}

void run_identities_trial(CheckOutcome &outcome, std::size_t trial, Rng &rng) {
    // Symmetric and correlation functionals carry the same slack.
    const std::size_t n = 2 + rng.next_u64() % 2;
    const std::size_t d = 2 + rng.next_u64() % 2;
    const PureState psi = random_pure_state(rng, std::vector<std::size_t>(n, d));
    const HermitianMatrix k = random_hermitian(rng, d);
    const double gap =
        std::abs(symmetric_slack(psi, k).slack - correlation_slack(psi, k).slack);
    if (gap > kPropertyTol) {
        std::ostringstream why;
        why << "symmetric vs correlation slack differ by " << gap;
        note_failure(outcome, trial, why.str());
        dump_state(outcome, CheckSuite::identities, trial, "state", psi);
        dump_matrix(outcome, CheckSuite::identities, trial, "observable", k);
    }

    // Trace route vs commutator route of the entropy.
    const std::size_t dim = 2 + rng.next_u64() % 4;
    const DensityMatrix rho = random_density_matrix(rng, dim);
    const HermitianMatrix obs = random_hermitian(rng, dim);
    const double route_gap =
        std::abs(wy_entropy(rho, obs) - wy_entropy_commutator_form(rho, obs));
    if (route_gap > kPropertyTol) {
        std::ostringstream why;
        why << "trace and commutator routes differ by " << route_gap;
        note_failure(outcome, trial, why.str());
        dump_matrix(outcome, CheckSuite::identities, trial, "rho", rho.matrix());
        dump_matrix(outcome, CheckSuite::identities, trial, "observable_entropy", obs);
    }
}

}  // namespace

std::string to_string(CheckSuite suite) {
    switch (suite) {
        case CheckSuite::bipartite: return "bipartite";
        case CheckSuite::concavity: return "concavity";
        case CheckSuite::identities: return "identities";
    }
    return "unknown";
}

CheckSuite check_suite_from_string(const std::string &name) {
    if (name == "bipartite") return CheckSuite::bipartite;
    if (name == "concavity") return CheckSuite::concavity;
    if (name == "identities") return CheckSuite::identities;
    throw std::invalid_argument("unknown check suite: " + name);
}

CheckOutcome run_check_suite(CheckSuite suite, std::size_t trials, std::uint64_t seed) {
    if (trials == 0) throw std::invalid_argument("check: trials must be >= 1");
    CheckOutcome outcome{suite, trials, seed, 0, {}, {}};
    for (std::size_t trial = 0; trial < trials; ++trial) {
        Rng rng(split_seed(seed, trial));
        switch (suite) {
            case CheckSuite::bipartite: run_bipartite_trial(outcome, trial, rng); break;
            case CheckSuite::concavity: run_concavity_trial(outcome, trial, rng); break;
            case CheckSuite::identities: run_identities_trial(outcome, trial, rng); break;
        }
    }
    return outcome;
}

}  // namespace wyskew

#include "wyskew/skew.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace wyskew {

std::string to_string(InequalityId id) {
    switch (id) {
        case InequalityId::bipartite: return "bipartite";
        case InequalityId::n_partite: return "n_partite";
        case InequalityId::symmetric: return "symmetric";
        case InequalityId::correlation: return "correlation";
    }
    return "unknown";
}

InequalityId inequality_from_string(const std::string &name) {
    if (name == "bipartite") return InequalityId::bipartite;
    if (name == "n_partite" || name == "n-partite") return InequalityId::n_partite;
    if (name == "symmetric") return InequalityId::symmetric;
    if (name == "correlation") return InequalityId::correlation;
    throw std::invalid_argument("unknown inequality id: " + name);
}

SlackReport make_slack_report(InequalityId id, double lhs, double rhs, double violation_tol) {
    const double slack = lhs - rhs;
    return SlackReport{id, lhs, rhs, slack, slack < -violation_tol, violation_tol};
}

namespace {

void require_unit_trace(const DensityMatrix &rho) {
    if (std::abs(rho.declared_trace() - 1.0) > 1e-10)
        throw std::invalid_argument("wy_entropy: density matrix must have unit trace");
}

/// rho^{1/2} for a unit-trace density matrix. A projector (rho^2 = rho, i.e.
/// a pure state) is its own square root; taking that branch exactly matters
/// because an eigendecomposition round-trips true zero eigenvalues as
/// ~1e-16 noise whose square root (~1e-8) would dominate the entropy of
/// rank-deficient inputs.
HermitianMatrix entropy_sqrt(const DensityMatrix &rho) {
    const ComplexMatrix &m = rho.matrix().matrix();
    ComplexMatrix residual = m * m;
    residual -= m;
    if (residual.frobenius_norm() <= 1e-13) return rho.matrix();
    return sqrt_psd(rho.matrix());
}

/// Tr rho K^2 - Tr rho^{1/2} K rho^{1/2} K for a unit-trace rho; the per-site
/// summand on the right side of the n-partite inequality (the skew
/// information, i.e. -S(rho, K)).
double skew_information_term(const DensityMatrix &rho, const HermitianMatrix &k) {
    const HermitianMatrix root = entropy_sqrt(rho);
    return trace_product_real(rho.matrix(), k, k) - trace_product_real(root, k, root, k);
}

}  // namespace

double wy_entropy(const DensityMatrix &rho, const HermitianMatrix &k) {
    if (rho.dim() != k.dim()) throw std::invalid_argument("wy_entropy: dimension mismatch");
    require_unit_trace(rho);
    const double value = -skew_information_term(rho, k);
#ifndef NDEBUG
    assert(std::abs(value - wy_entropy_commutator_form(rho, k)) <= 1e-10);
#endif
    return value;
}

double wy_entropy_commutator_form(const DensityMatrix &rho, const HermitianMatrix &k) {
    if (rho.dim() != k.dim()) throw std::invalid_argument("wy_entropy: dimension mismatch");
    require_unit_trace(rho);
    return half_trace_commutator_squared(entropy_sqrt(rho), k);
}

SlackReport bipartite_slack(const PureState &psi, const HermitianMatrix &k1,
                            const HermitianMatrix &k2, double violation_tol) {
    if (psi.n_sites() != 2)
        throw std::invalid_argument("bipartite_slack: state must have exactly two sites");
    const HermitianMatrix ks[] = {k1, k2};
    const CollectiveMoments m = collective_expectations(psi, std::span<const HermitianMatrix>(ks));

    const double lhs =
        wy_entropy(reduced_one_site(psi, 0), k1) + wy_entropy(reduced_one_site(psi, 1), k2);
    const double rhs = m.first * m.first - m.second;  // joint pure-state entropy
    return make_slack_report(InequalityId::bipartite, lhs, rhs, violation_tol);
}

SlackReport n_partite_slack(const PureState &psi, std::span<const HermitianMatrix> ks,
                            double violation_tol) {
    if (ks.size() != psi.n_sites())
        throw std::invalid_argument("n_partite_slack: need one observable per site");
    const CollectiveMoments m = collective_expectations(psi, ks);
    const double lhs = m.second - m.first * m.first;

    double rhs = 0.0;
    for (std::size_t i = 0; i < psi.n_sites(); ++i)
        rhs += skew_information_term(reduced_one_site(psi, i), ks[i]);
    return make_slack_report(InequalityId::n_partite, lhs, rhs, violation_tol);
}

namespace {

struct GammaTraces {
    double tr_gamma_k;          // Tr gamma K
    double tr_gamma_k2;         // Tr gamma K^2
    double tr_root_k_root_k;    // Tr gamma^{1/2} K gamma^{1/2} K
};

GammaTraces gamma_traces(const PureState &psi, const HermitianMatrix &k) {
    const DensityMatrix gamma = one_particle_dm(psi);
    if (gamma.dim() != k.dim())
        throw std::invalid_argument("observable dimension does not match local dimension");
    const HermitianMatrix root = sqrt_psd(gamma.matrix());
    return GammaTraces{trace_product_real(gamma.matrix(), k),
                       trace_product_real(gamma.matrix(), k, k),
                       trace_product_real(root, k, root, k)};
}

}  // namespace

SlackReport symmetric_slack(const PureState &psi, const HermitianMatrix &k, double violation_tol) {
    const GammaTraces g = gamma_traces(psi, k);
    const CollectiveMoments m = collective_expectations(psi, k);
    const double lhs = m.second - m.first * m.first;
    const double rhs = g.tr_gamma_k2 - g.tr_root_k_root_k;
    return make_slack_report(InequalityId::symmetric, lhs, rhs, violation_tol);
}

SlackReport correlation_slack(const PureState &psi, const HermitianMatrix &k,
                              double violation_tol) {
    const GammaTraces g = gamma_traces(psi, k);
    const CollectiveMoments m = collective_expectations(psi, k);
    const double lhs = m.second - g.tr_gamma_k2;  // <sum_i K_i^2> = Tr gamma K^2
    const double rhs = g.tr_gamma_k * g.tr_gamma_k - g.tr_root_k_root_k;
    return make_slack_report(InequalityId::correlation, lhs, rhs, violation_tol);
}

double concavity_probe(const DensityMatrix &rho1, const DensityMatrix &rho2,
                       const HermitianMatrix &k, double lambda) {
    if (rho1.dim() != rho2.dim() || rho1.dim() != k.dim())
        throw std::invalid_argument("concavity_probe: dimension mismatch");
    if (!(lambda >= 0.0 && lambda <= 1.0))
        throw std::invalid_argument("concavity_probe: lambda must lie in [0, 1]");
    require_unit_trace(rho1);
    require_unit_trace(rho2);

    HermitianMatrix mixed = rho1.matrix().scaled(lambda);
    mixed += rho2.matrix().scaled(1.0 - lambda);
    const DensityMatrix rho_mix(std::move(mixed), 1.0);

    return wy_entropy(rho_mix, k) - lambda * wy_entropy(rho1, k) -
           (1.0 - lambda) * wy_entropy(rho2, k);
}

}  // namespace wyskew

#pragma once

#include <span>
#include <string>

#include "wyskew/states.hpp"

namespace wyskew {

enum class InequalityId { bipartite, n_partite, symmetric, correlation };

std::string to_string(InequalityId id);
InequalityId inequality_from_string(const std::string &name);

/// One inequality evaluation, oriented so that the claimed inequality holds
/// exactly when slack >= 0. A violation is slack < -violation_tol.
struct SlackReport {
    InequalityId inequality_id;
    double lhs;
    double rhs;
    double slack;  ///< lhs - rhs
    bool violated;
    double violation_tol;
};

inline constexpr double kDefaultViolationTol = 1e-9;

SlackReport make_slack_report(InequalityId id, double lhs, double rhs,
                              double violation_tol = kDefaultViolationTol);

/// Wigner-Yanase entropy  S(rho, K) = Tr rho^{1/2} K rho^{1/2} K - Tr rho K^2.
/// Non-positive, concave in rho. rho must be a unit-trace density matrix of
/// K's dimension.
double wy_entropy(const DensityMatrix &rho, const HermitianMatrix &k);

/// The commutator route (1/2) Tr [rho^{1/2}, K]^2 of the same quantity.
double wy_entropy_commutator_form(const DensityMatrix &rho, const HermitianMatrix &k);

/// S(rho_1, K_1) + S(rho_2, K_2)  >=  S(|psi><psi|, K_1 (x) 1 + 1 (x) K_2)
/// for bipartite pure psi. lhs is the sum over subsystems; rhs is the joint
/// pure-state entropy, computed through the collective moments (for a pure
/// state the entropy equals <M>^2 - <M^2>).
SlackReport bipartite_slack(const PureState &psi, const HermitianMatrix &k1,
                            const HermitianMatrix &k2,
                            double violation_tol = kDefaultViolationTol);

/// Var_psi(sum_i K_i)  >=  sum_i (Tr rho_i K_i^2 - Tr rho_i^{1/2} K_i rho_i^{1/2} K_i).
SlackReport n_partite_slack(const PureState &psi, std::span<const HermitianMatrix> ks,
                            double violation_tol = kDefaultViolationTol);

/// Var_psi(sum_i K_i)  >=  Tr gamma K^2 - Tr gamma^{1/2} K gamma^{1/2} K,
/// with gamma the one-particle density matrix and the same K on every site.
SlackReport symmetric_slack(const PureState &psi, const HermitianMatrix &k,
                            double violation_tol = kDefaultViolationTol);

/// <psi| sum_{i != j} K_i K_j |psi>  >=  (Tr gamma K)^2 - Tr gamma^{1/2} K gamma^{1/2} K.
/// Algebraically the same slack as symmetric_slack.
SlackReport correlation_slack(const PureState &psi, const HermitianMatrix &k,
                              double violation_tol = kDefaultViolationTol);

/// S(lambda rho1 + (1-lambda) rho2, K) - lambda S(rho1, K) - (1-lambda) S(rho2, K);
/// concavity makes this >= 0.
double concavity_probe(const DensityMatrix &rho1, const DensityMatrix &rho2,
                       const HermitianMatrix &k, double lambda);

}  // namespace wyskew

#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "wyskew/skew.hpp"

namespace wyskew {

/// Violation hunt over the pure-state manifold: restarts independent
/// Nelder-Mead runs from random points on the parameter sphere, maximizing
/// -slack of the chosen inequality at a fixed single-site observable.
struct SearchConfig {
    std::size_t n_sites = 3;
    std::size_t local_dim = 2;
    InequalityId objective = InequalityId::symmetric;  // symmetric or n_partite
    HermitianMatrix observable = HermitianMatrix(2);
    bool complex_amplitudes = false;
    std::size_t restarts = 64;
    std::size_t max_iters = 2000;
    double simplex_tol = 1e-10;
    std::uint64_t master_seed = 0;
    double violation_tol = kDefaultViolationTol;
};

/// Throws std::invalid_argument on a degenerate configuration.
void validate(const SearchConfig &cfg);

struct TracePoint {
    std::size_t iteration;
    double objective;  ///< best objective value so far
};

struct SearchResult {
    PureState best_state;
    double best_violation;  ///< -slack of best_state; positive when violated
    SlackReport best_report;
    std::size_t restart_index;
    std::size_t iterations_used;
    std::uint64_t seed_used;  ///< per-restart stream seed of the winner
    bool converged;
    std::vector<TracePoint> trace;  ///< best-so-far improvements of the winner
    std::string rng_algorithm;
};

/// Number of raw parameters for a configuration (doubled in complex mode).
std::size_t parameter_count(const SearchConfig &cfg);

/// Normalizes x to a unit state and returns -slack of the configured
/// inequality; scaling x leaves the value unchanged. Degenerate vectors
/// (all zero or non-finite) yield the rejection value -1e18 instead of
/// throwing, keeping the objective total for the optimizer.
double objective_eval(std::span<const double> x, const SearchConfig &cfg);

inline constexpr double kRejectionValue = -1e18;

/// Unit state encoded by a parameter vector (throws on degenerate input).
PureState state_from_parameters(std::span<const double> x, const SearchConfig &cfg);

struct NelderMeadResult {
    std::vector<double> x;
    double value;
    std::size_t iterations;
    bool converged;
    std::vector<TracePoint> trace;
};

/// Simplex maximization with reflection 1, expansion 2, contraction 0.5,
/// shrink 0.5. Initial simplex: x0 plus per-coordinate steps of
/// max(0.05, 0.05 |x0_i|). Stops when the simplex value spread drops below
/// tol or after max_iters. The result never degrades the best evaluated
/// point, including x0 itself.
NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)> &f,
                             std::span<const double> x0, std::size_t max_iters, double tol);

/// Runs cfg.restarts independent Nelder-Mead streams (optionally on a small
/// thread pool) and merges them deterministically: the largest violation
/// wins, ties broken by the lower restart index, so any thread count gives
/// the same result. The winner is re-validated through a fresh slack
/// evaluation; disagreement beyond 1e-12 is a hard error.
SearchResult run_search(const SearchConfig &cfg, std::size_t threads = 1);

}  // namespace wyskew

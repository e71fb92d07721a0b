#include "wyskew/search.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "wyskew/rng.hpp"

namespace wyskew {

void validate(const SearchConfig &cfg) {
    if (cfg.n_sites < 2) throw std::invalid_argument("search: need at least two sites");
    if (cfg.local_dim < 2) throw std::invalid_argument("search: local dimension must be >= 2");
    if (cfg.objective != InequalityId::symmetric && cfg.objective != InequalityId::n_partite)
        throw std::invalid_argument("search: objective must be symmetric or n_partite");
    if (cfg.observable.dim() != cfg.local_dim)
        throw std::invalid_argument("search: observable dimension must equal the local dimension");
    if (cfg.restarts == 0) throw std::invalid_argument("search: restarts must be >= 1");
    if (cfg.max_iters == 0) throw std::invalid_argument("search: max_iters must be >= 1");
    if (!(cfg.simplex_tol > 0.0)) throw std::invalid_argument("search: simplex tol must be > 0");
    if (!(cfg.violation_tol >= 0.0))
        throw std::invalid_argument("search: violation tol must be >= 0");
}

std::size_t parameter_count(const SearchConfig &cfg) {
    std::size_t dim = 1;
    for (std::size_t i = 0; i < cfg.n_sites; ++i) dim *= cfg.local_dim;
    return cfg.complex_amplitudes ? 2 * dim : dim;
}

namespace {

std::vector<Complex> amplitudes_from_parameters(std::span<const double> x,
                                                const SearchConfig &cfg) {
    std::vector<Complex> amps;
    if (cfg.complex_amplitudes) {
        amps.reserve(x.size() / 2);
        for (std::size_t i = 0; i + 1 < x.size(); i += 2) amps.emplace_back(x[i], x[i + 1]);
    } else {
        amps.assign(x.begin(), x.end());
    }
    return amps;
}

double evaluate_slack(const PureState &psi, const SearchConfig &cfg) {
    if (cfg.objective == InequalityId::symmetric)
        return symmetric_slack(psi, cfg.observable, cfg.violation_tol).slack;
    const std::vector<HermitianMatrix> ks(psi.n_sites(), cfg.observable);
    return n_partite_slack(psi, ks, cfg.violation_tol).slack;
}

}  // namespace

PureState state_from_parameters(std::span<const double> x, const SearchConfig &cfg) {
    if (x.size() != parameter_count(cfg))
        throw std::invalid_argument("state_from_parameters: wrong parameter count");
    return PureState(std::vector<std::size_t>(cfg.n_sites, cfg.local_dim),
                     amplitudes_from_parameters(x, cfg), PureState::Normalization::normalize);
}

double objective_eval(std::span<const double> x, const SearchConfig &cfg) {
    if (x.size() != parameter_count(cfg)) return kRejectionValue;
    double norm2 = 0.0;
    for (double v : x) {
        if (!std::isfinite(v)) return kRejectionValue;
        norm2 += v * v;
    }
    if (norm2 <= 0.0) return kRejectionValue;
    return -evaluate_slack(state_from_parameters(x, cfg), cfg);
}

NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)> &f,
                             std::span<const double> x0, std::size_t max_iters, double tol) {
    const std::size_t dim = x0.size();
    if (dim == 0) throw std::invalid_argument("nelder_mead: empty start point");
    for (double v : x0) {
        if (!std::isfinite(v)) throw std::invalid_argument("nelder_mead: non-finite start point");
    }

    constexpr double kReflect = 1.0;
    constexpr double kExpand = 2.0;
    constexpr double kContract = 0.5;
    constexpr double kShrink = 0.5;

    std::vector<std::vector<double>> simplex(dim + 1, std::vector<double>(x0.begin(), x0.end()));
    for (std::size_t i = 0; i < dim; ++i)
        simplex[i + 1][i] += std::max(0.05, 0.05 * std::abs(x0[i]));

    NelderMeadResult result;
    result.x.assign(x0.begin(), x0.end());
    result.value = -std::numeric_limits<double>::infinity();
    result.converged = false;

    auto record_best = [&](std::span<const double> x, double value, std::size_t iteration) {
        if (value > result.value) {
            result.value = value;
            result.x.assign(x.begin(), x.end());
            result.trace.push_back(TracePoint{iteration, value});
        }
    };

    std::vector<double> values(dim + 1);
    for (std::size_t v = 0; v <= dim; ++v) {
        values[v] = f(simplex[v]);
        record_best(simplex[v], values[v], 0);
    }

    std::vector<std::size_t> order(dim + 1);
    std::vector<double> centroid(dim), candidate(dim);

    // Exact value ties (e.g. vertices straddling a quadratic maximum
    // symmetrically) would otherwise stop the iteration while the simplex is
    // still wide, so the spread test is paired with a geometric one.
    auto simplex_extent = [&](std::size_t best) {
        double extent = 0.0;
        for (std::size_t v = 0; v <= dim; ++v)
            for (std::size_t i = 0; i < dim; ++i)
                extent = std::max(extent, std::abs(simplex[v][i] - simplex[best][i]));
        return extent;
    };

    std::size_t iter = 0;
    for (; iter < max_iters; ++iter) {
        for (std::size_t v = 0; v <= dim; ++v) order[v] = v;
        // Descending by value: order[0] is the best vertex, order[dim] the worst.
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });

        if (values[order[0]] - values[order[dim]] < tol && simplex_extent(order[0]) <= 1e-8) {
            result.converged = true;
            break;
        }

        const std::size_t worst = order[dim];
        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (std::size_t v = 0; v <= dim; ++v) {
            if (v == worst) continue;
            for (std::size_t i = 0; i < dim; ++i) centroid[i] += simplex[v][i];
        }
        for (double &c : centroid) c /= static_cast<double>(dim);

        auto blend = [&](double coeff) {
            for (std::size_t i = 0; i < dim; ++i)
                candidate[i] = centroid[i] + coeff * (centroid[i] - simplex[worst][i]);
        };

        blend(kReflect);
        const double reflected = f(candidate);
        record_best(candidate, reflected, iter + 1);

        if (reflected > values[order[0]]) {
            std::vector<double> reflected_point = candidate;
            blend(kExpand);
            const double expanded = f(candidate);
            record_best(candidate, expanded, iter + 1);
            if (expanded > reflected) {
                simplex[worst] = candidate;
                values[worst] = expanded;
            } else {
                simplex[worst] = std::move(reflected_point);
                values[worst] = reflected;
            }
            continue;
        }
        if (reflected > values[order[dim - 1]]) {
            simplex[worst] = candidate;
            values[worst] = reflected;
            continue;
        }

        // Contraction: outside toward the reflected side if it improved on
        // the worst vertex, inside otherwise.
        blend(reflected > values[worst] ? kContract : -kContract);
        const double contracted = f(candidate);
        record_best(candidate, contracted, iter + 1);
        if (contracted > std::max(reflected, values[worst])) {
            simplex[worst] = candidate;
            values[worst] = contracted;
            continue;
        }

        const std::size_t best = order[0];
        for (std::size_t v = 0; v <= dim; ++v) {
            if (v == best) continue;
            for (std::size_t i = 0; i < dim; ++i)
                simplex[v][i] = simplex[best][i] + kShrink * (simplex[v][i] - simplex[best][i]);
            values[v] = f(simplex[v]);
            record_best(simplex[v], values[v], iter + 1);
        }
    }

    result.iterations = iter;
    return result;
}

SearchResult run_search(const SearchConfig &cfg, std::size_t threads) {
    validate(cfg);
    const std::size_t dim = parameter_count(cfg);

    struct RestartOutcome {
        NelderMeadResult nm;
        std::uint64_t seed;
    };
    std::vector<RestartOutcome> outcomes(cfg.restarts);

    auto run_restart = [&](std::size_t index) {
        const std::uint64_t seed = split_seed(cfg.master_seed, index);
        Rng rng(seed);
        const std::vector<double> x0 = random_unit_vector(rng, dim);
        NelderMeadResult nm = nelder_mead(
            [&cfg](std::span<const double> x) { return objective_eval(x, cfg); }, x0,
            cfg.max_iters, cfg.simplex_tol);
        outcomes[index] = RestartOutcome{std::move(nm), seed};
    };

    threads = std::max<std::size_t>(1, std::min(threads, cfg.restarts));
    if (threads == 1) {
        for (std::size_t r = 0; r < cfg.restarts; ++r) run_restart(r);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (std::size_t t = 0; t < threads; ++t) {
            pool.emplace_back([&] {
                for (;;) {
                    const std::size_t r = next.fetch_add(1);
                    if (r >= cfg.restarts) return;
                    run_restart(r);
                }
            });
        }
        for (std::thread &worker : pool) worker.join();
    }

    // Deterministic merge: strictly larger value wins, so the lowest restart
    // index is kept on exact ties regardless of execution order.
    std::size_t winner = 0;
    for (std::size_t r = 1; r < cfg.restarts; ++r) {
        if (outcomes[r].nm.value > outcomes[winner].nm.value) winner = r;
    }
    const RestartOutcome &best = outcomes[winner];
    if (best.nm.value == kRejectionValue)
        throw std::runtime_error("run_search: every restart hit the rejection value");

    PureState best_state = state_from_parameters(best.nm.x, cfg);

    // Re-validate through a fresh slack evaluation.
    const SlackReport fresh =
        cfg.objective == InequalityId::symmetric
            ? symmetric_slack(best_state, cfg.observable, cfg.violation_tol)
            : n_partite_slack(best_state,
                              std::vector<HermitianMatrix>(cfg.n_sites, cfg.observable),
                              cfg.violation_tol);
    if (std::abs(-fresh.slack - best.nm.value) > 1e-12) {
        std::ostringstream msg;
        msg << "run_search: optimizer value " << best.nm.value
            << " disagrees with re-evaluated slack " << fresh.slack;
        throw std::runtime_error(msg.str());
    }

    return SearchResult{std::move(best_state),
                        -fresh.slack,
                        fresh,
                        winner,
                        best.nm.iterations,
                        best.seed,
                        best.nm.converged,
                        best.nm.trace,
                        kRngAlgorithm};
}

}  // namespace wyskew

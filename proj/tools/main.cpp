#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "wyskew/check.hpp"
#include "wyskew/io.hpp"
#include "wyskew/search.hpp"
#include "wyskew/witness.hpp"

namespace {

using nlohmann::ordered_json;
using namespace wyskew;

// Exit-code contract: every run ends in one of these.
constexpr int kExitHolds = 0;       // computation succeeded, inequality holds / all checks match
constexpr int kExitMismatch = 1;    // verify-paper found a mismatched quantity
constexpr int kExitError = 2;       // usage, I/O or validation error
constexpr int kExitCheckFailed = 3; // a property suite produced failures
constexpr int kExitViolation = 10;  // computation succeeded, inequality violated

struct OutputOptions {
    bool json = false;
    std::string out_path;
};

void add_output_flags(CLI::App *cmd, OutputOptions &opts) {
    cmd->add_flag("--json", opts.json, "Print the JSON report to stdout instead of a table");
    cmd->add_option("--out", opts.out_path, "Also write the JSON report to this file");
}

/// Fills the envelope around a payload and delivers it. The command echo
/// holds exactly the computation-affecting arguments, so reports are byte
/// stable across thread counts and output options; duration_seconds is the
/// one field excluded from reproducibility comparisons.
void deliver_report(const std::string &command, const std::string &report_type,
                    ordered_json payload, const OutputOptions &opts,
                    std::chrono::steady_clock::time_point start, const std::string &table) {
    ordered_json doc;
    doc["schema"] = io::kSchemaTag;
    doc["tool_version"] = io::kToolVersion;
    doc["command"] = command;
    doc["report_type"] = report_type;
    for (auto &[key, value] : payload.items()) doc[key] = std::move(value);
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    doc["duration_seconds"] = elapsed.count();

    const std::string text = io::dump_json(doc);
    if (!opts.out_path.empty()) io::save_text(opts.out_path, text);
    if (opts.json) {
        std::cout << text;
    } else {
        std::cout << table;
    }
}

ordered_json slack_json(const SlackReport &r) {
    ordered_json doc;
    doc["inequality_id"] = to_string(r.inequality_id);
    doc["lhs"] = r.lhs;
    doc["rhs"] = r.rhs;
    doc["slack"] = r.slack;
    doc["violated"] = r.violated;
    doc["violation_tol"] = r.violation_tol;
    return doc;
}

std::string slack_line(const char *label, const SlackReport &r) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), "%-22s lhs = %.12g, rhs = %.12g, slack = %.12g  [%s]\n", label,
                  r.lhs, r.rhs, r.slack, r.violated ? "VIOLATED" : "holds");
    return buf;
}

// ---------------------------------------------------------------- verify-paper

int cmd_verify_paper(const OutputOptions &opts) {
    const auto start = std::chrono::steady_clock::now();
    const WitnessReport report = verify_witness();

    ordered_json payload;
    payload["all_match"] = report.all_match;
    ordered_json checks = ordered_json::array();
    for (const CheckItem &item : report.items) {
        ordered_json entry;
        entry["name"] = item.name;
        entry["expected"] = item.expected;
        entry["computed"] = item.computed;
        entry["abs_error"] = item.abs_error;
        entry["tolerance"] = item.tolerance;
        entry["ok"] = item.ok;
        checks.push_back(std::move(entry));
    }
    payload["checks"] = std::move(checks);
    payload["symmetric"] = slack_json(report.symmetric);
    payload["n_partite_diagnostic"] = slack_json(report.n_partite_diagnostic);
    payload["state"] = io::state_file_json(witness_state());
    payload["observable"] = io::observable_file_json(witness_observable());

    std::ostringstream table;
    table << "built-in witness verification\n";
    char line[256];
    std::snprintf(line, sizeof(line), "  %-32s %16s %16s %10s %8s  %s\n", "item", "expected",
                  "computed", "|error|", "tol", "status");
    table << line;
    for (const CheckItem &item : report.items) {
        std::snprintf(line, sizeof(line), "  %-32s %16.10g %16.10g %10.2e %8.0e  %s\n",
                      item.name.c_str(), item.expected, item.computed, item.abs_error,
                      item.tolerance, item.ok ? "ok" : "FAIL");
        table << line;
    }
    table << slack_line("symmetric:", report.symmetric);
    table << "diagnostic (not a reproduction check):\n";
    table << slack_line("n-partite:", report.n_partite_diagnostic);
    table << (report.all_match ? "all checks passed\n" : "MISMATCH\n");

    deliver_report("verify-paper", "witness", std::move(payload), opts, start, table.str());

    if (!report.all_match) {
        for (const CheckItem &item : report.items) {
            if (!item.ok)
                std::cerr << "mismatch: " << item.name << " expected " << item.expected << " got "
                          << item.computed << " (|error| " << item.abs_error << " > tol "
                          << item.tolerance << ")\n";
        }
        return kExitMismatch;
    }
    return kExitHolds;
}

// ------------------------------------------------------------------------ eval

struct EvalArgs {
    std::string state_path;
    std::vector<std::string> observable_paths;
    std::string mode;
    double violation_tol = kDefaultViolationTol;
};

int cmd_eval(const EvalArgs &args, const OutputOptions &opts) {
    const auto start = std::chrono::steady_clock::now();

    std::string warning;
    const PureState psi = io::load_state_file(args.state_path, &warning);
    if (!warning.empty()) std::cerr << "warning: " << warning << "\n";

    std::vector<HermitianMatrix> ks;
    ks.reserve(args.observable_paths.size());
    for (const std::string &path : args.observable_paths)
        ks.push_back(io::load_observable_file(path));

    const InequalityId mode = inequality_from_string(args.mode);
    // A single observable file is replicated across sites where that makes
    // sense; otherwise counts must match.
    SlackReport report{};
    switch (mode) {
        case InequalityId::bipartite: {
            if (ks.size() == 1) ks.push_back(ks.front());
            if (ks.size() != 2)
                throw std::runtime_error("bipartite mode needs one or two observables");
            report = bipartite_slack(psi, ks[0], ks[1], args.violation_tol);
            break;
        }
        case InequalityId::n_partite: {
            if (ks.size() == 1) ks.assign(psi.n_sites(), ks.front());
            if (ks.size() != psi.n_sites())
                throw std::runtime_error("n_partite mode needs one observable or one per site");
            report = n_partite_slack(psi, ks, args.violation_tol);
            break;
        }
        case InequalityId::symmetric:
        case InequalityId::correlation: {
            if (ks.size() != 1)
                throw std::runtime_error(args.mode + " mode takes exactly one observable");
            report = mode == InequalityId::symmetric
                         ? symmetric_slack(psi, ks[0], args.violation_tol)
                         : correlation_slack(psi, ks[0], args.violation_tol);
            break;
        }
    }

    std::ostringstream command;
    command << "eval --state " << args.state_path;
    for (const std::string &path : args.observable_paths) command << " --observable " << path;
    command << " --mode " << to_string(mode) << " --violation-tol "
            << io::format_double(args.violation_tol);

    ordered_json payload = slack_json(report);
    payload["tolerances"] = ordered_json{{"violation_tol", args.violation_tol}};

    deliver_report(command.str(), "eval", std::move(payload), opts, start,
                   slack_line(to_string(mode).c_str(), report));
    return report.violated ? kExitViolation : kExitHolds;
}

// ---------------------------------------------------------------------- search

struct SearchArgs {
    SearchConfig cfg;
    std::string observable_path;
    std::size_t threads = 1;
};

int cmd_search(SearchArgs &args, const OutputOptions &opts) {
    const auto start = std::chrono::steady_clock::now();

    if (!args.observable_path.empty()) {
        args.cfg.observable = io::load_observable_file(args.observable_path);
    } else {
        // Default observable: the projector onto the first basis state.
        HermitianMatrix projector(args.cfg.local_dim);
        projector.set(0, 0, 1.0);
        args.cfg.observable = projector;
    }

    const SearchResult result = run_search(args.cfg, args.threads);

    std::ostringstream command;
    command << "search --sites " << args.cfg.n_sites << " --dim " << args.cfg.local_dim
            << " --objective " << to_string(args.cfg.objective);
    if (!args.observable_path.empty()) command << " --observable " << args.observable_path;
    if (args.cfg.complex_amplitudes) command << " --complex";
    command << " --restarts " << args.cfg.restarts << " --max-iters " << args.cfg.max_iters
            << " --simplex-tol " << io::format_double(args.cfg.simplex_tol) << " --seed "
            << args.cfg.master_seed << " --violation-tol "
            << io::format_double(args.cfg.violation_tol);

    ordered_json payload;
    ordered_json config;
    config["sites"] = args.cfg.n_sites;
    config["dim"] = args.cfg.local_dim;
    config["objective"] = to_string(args.cfg.objective);
    config["complex_amplitudes"] = args.cfg.complex_amplitudes;
    config["restarts"] = args.cfg.restarts;
    config["max_iters"] = args.cfg.max_iters;
    config["simplex_tol"] = args.cfg.simplex_tol;
    config["master_seed"] = args.cfg.master_seed;
    config["rng_algorithm"] = result.rng_algorithm;
    config["observable"] = io::observable_file_json(args.cfg.observable);
    payload["config"] = std::move(config);

    for (auto &[key, value] : slack_json(result.best_report).items()) payload[key] = value;
    payload["best_violation"] = result.best_violation;
    payload["restart_index"] = result.restart_index;
    payload["iterations_used"] = result.iterations_used;
    payload["seed_used"] = result.seed_used;
    payload["converged"] = result.converged;
    ordered_json trace = ordered_json::array();
    for (const TracePoint &point : result.trace)
        trace.push_back(ordered_json::array({point.iteration, point.objective}));
    payload["trace"] = std::move(trace);
    payload["witness_state"] = io::state_file_json(result.best_state);

    std::ostringstream table;
    char line[256];
    std::snprintf(line, sizeof(line),
                  "search over %zu sites of dimension %zu (%s objective, %zu restarts, seed "
                  "%llu)\n",
                  args.cfg.n_sites, args.cfg.local_dim, to_string(args.cfg.objective).c_str(),
                  args.cfg.restarts, static_cast<unsigned long long>(args.cfg.master_seed));
    table << line;
    std::snprintf(line, sizeof(line),
                  "best violation %.12g (restart %zu, %zu iterations, stream seed %llu, %s)\n",
                  result.best_violation, result.restart_index, result.iterations_used,
                  static_cast<unsigned long long>(result.seed_used),
                  result.converged ? "converged" : "iteration cap");
    table << line;
    table << slack_line("best state:", result.best_report);

    deliver_report(command.str(), "search", std::move(payload), opts, start, table.str());
    return result.best_violation > args.cfg.violation_tol ? kExitViolation : kExitHolds;
}

// ----------------------------------------------------------------------- check

struct CheckArgs {
    std::string suite;
    std::size_t trials = 500;
    std::uint64_t seed = 0;
    std::string dump_dir = ".";
};

int cmd_check(const CheckArgs &args, const OutputOptions &opts) {
    const auto start = std::chrono::steady_clock::now();
    const CheckSuite suite = check_suite_from_string(args.suite);
    const CheckOutcome outcome = run_check_suite(suite, args.trials, args.seed);

    std::vector<std::string> dumped;
    for (const auto &[name, text] : outcome.reproducers) {
        const std::filesystem::path path = std::filesystem::path(args.dump_dir) / name;
        io::save_text(path, text);
        dumped.push_back(path.string());
    }

    std::ostringstream command;
    command << "check " << to_string(suite) << " --trials " << args.trials << " --seed "
            << args.seed;

    ordered_json payload;
    payload["suite"] = to_string(suite);
    payload["trials"] = outcome.trials;
    payload["seed"] = outcome.seed;
    payload["failures"] = outcome.failures;
    payload["failure_notes"] = outcome.failure_notes;
    payload["reproducers"] = dumped;
    payload["ok"] = outcome.failures == 0;

    std::ostringstream table;
    table << "check " << to_string(suite) << ": " << outcome.trials << " trials, "
          << outcome.failures << " failures (seed " << outcome.seed << ")\n";
    for (const std::string &note : outcome.failure_notes) table << "  " << note << "\n";
    for (const std::string &path : dumped) table << "  reproducer written: " << path << "\n";

    deliver_report(command.str(), "check", std::move(payload), opts, start, table.str());
    return outcome.failures == 0 ? kExitHolds : kExitCheckFailed;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Wigner-Yanase entropy subadditivity toolkit"};
    app.require_subcommand(1);

    OutputOptions verify_opts;
    CLI::App *verify = app.add_subcommand(
        "verify-paper", "Recompute the built-in 3-qubit witness and compare every quantity "
                        "against its published reference value");
    add_output_flags(verify, verify_opts);

    EvalArgs eval_args;
    OutputOptions eval_opts;
    CLI::App *eval = app.add_subcommand(
        "eval", "Evaluate one subadditivity inequality on a state/observable pair");
    eval->add_option("--state", eval_args.state_path, "StateFile JSON path")->required();
    eval->add_option("--observable", eval_args.observable_paths,
                     "ObservableFile JSON path (repeatable for per-site observables)")
        ->required();
    eval->add_option("--mode", eval_args.mode,
                     "Inequality: bipartite, n-partite, symmetric or correlation")
        ->required();
    eval->add_option("--violation-tol", eval_args.violation_tol,
                     "Slack below -tol counts as a violation");
    add_output_flags(eval, eval_opts);

    SearchArgs search_args;
    OutputOptions search_opts;
    CLI::App *search = app.add_subcommand(
        "search", "Hunt for violations over random pure states with Nelder-Mead restarts");
    search->add_option("--sites", search_args.cfg.n_sites, "Number of tensor factors")
        ->required();
    search->add_option("--dim", search_args.cfg.local_dim, "Local dimension")->required();
    std::string objective = "symmetric";
    search->add_option("--objective", objective, "symmetric or n-partite");
    search->add_option("--observable", search_args.observable_path,
                       "ObservableFile JSON path (default: projector onto the first basis state)");
    search->add_flag("--complex", search_args.cfg.complex_amplitudes,
                     "Search complex amplitudes (doubles the parameter count)");
    search->add_option("--restarts", search_args.cfg.restarts, "Independent restarts");
    search->add_option("--max-iters", search_args.cfg.max_iters, "Iteration cap per restart");
    search->add_option("--simplex-tol", search_args.cfg.simplex_tol,
                       "Simplex value-spread stopping tolerance");
    search->add_option("--seed", search_args.cfg.master_seed, "Master seed");
    search->add_option("--violation-tol", search_args.cfg.violation_tol,
                       "Slack below -tol counts as a violation");
    search->add_option("--threads", search_args.threads,
                       "Parallel restart workers (does not affect the result)");
    add_output_flags(search, search_opts);

    CheckArgs check_args;
    OutputOptions check_opts;
    CLI::App *check = app.add_subcommand("check", "Run a randomized property suite");
    check->add_option("suite", check_args.suite, "bipartite, concavity or identities")
        ->required();
    check->add_option("--trials", check_args.trials, "Number of randomized trials");
    check->add_option("--seed", check_args.seed, "Master seed");
    check->add_option("--dump-dir", check_args.dump_dir,
                      "Directory for failure reproducer files");
    add_output_flags(check, check_opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitError;
    }

    try {
        if (verify->parsed()) return cmd_verify_paper(verify_opts);
        if (eval->parsed()) return cmd_eval(eval_args, eval_opts);
        if (search->parsed()) {
            search_args.cfg.objective = inequality_from_string(objective);
            return cmd_search(search_args, search_opts);
        }
        if (check->parsed()) return cmd_check(check_args, check_opts);
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}

#pragma once

#include "corrmap/corrmap.hpp"
#include "corrmap/io.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace corrmap::cli {

struct CommonOpts {
    std::uint64_t seed = 0;
    int samples = 2000;
    std::optional<double> tol_override;
    std::string out_path;

    double consistency() const { return tol_override.value_or(tol::consistency); }
    double unitary() const { return tol_override.value_or(tol::unitary); }
    double cp_base() const { return tol_override.value_or(tol::cp_base); }
    double hide() const { return tol_override.value_or(tol::hide); }
};

namespace detail {

inline void add_common(CLI::App* sub, CommonOpts& opts) {
    sub->add_option("--seed", opts.seed, "RNG seed for all sampling")->capture_default_str();
    sub->add_option("--samples", opts.samples, "random samples for witness/positivity scans")
        ->capture_default_str();
    double tol_value = 0.0;
    sub->add_option_function<double>(
           "--tol", [&opts](const double& v) { opts.tol_override = v; },
           "override module tolerances uniformly");
    (void)tol_value;
    sub->add_option("--out", opts.out_path, "write result to this file instead of stdout");
}

inline json witness_to_json(const std::optional<NegativityWitness>& w) {
    if (!w) return nullptr;
    return json{{"eta", matrix_to_json(w->eta)}, {"min_eig", w->min_eig}};
}

}  // namespace detail

inline std::string run_analyze_assignment(const std::string& file, const CommonOpts& opts) {
    const AssignmentMap a = assignment_from_json(load_json_file(file));
    const double residual = check_consistency(a);
    const auto witness = negativity_witness(a, opts.samples, opts.seed);
    json out{{"consistency_residual", residual},
             {"consistent", residual <= opts.consistency()},
             {"witness", detail::witness_to_json(witness)},
             {"samples", opts.samples}};
    return out.dump(2) + "\n";
}

inline std::string run_compose(const std::string& assignment_file,
                               const std::string& unitary_file, const CommonOpts& opts) {
    const AssignmentMap a = assignment_from_json(load_json_file(assignment_file));
    const CMatrix u = matrix_from_json(load_json_file(unitary_file));
    const DynamicalMap b = compose(a, u, opts.consistency(), opts.unitary());
    const PositivityReport report = positivity_scan(b, opts.samples, opts.seed);
    json out{{"d_s", b.d_s},
             {"choi", matrix_to_json(b.choi)},
             {"is_cp", report.is_cp},
             {"min_choi_eig", report.min_choi_eig},
             {"positivity_scan_min", report.positivity_scan_min},
             {"samples_used", report.samples_used}};
    if (report.witness_pair) {
        out["witness"] = json{{"r", matrix_to_json(report.witness_pair->first)},
                              {"s", matrix_to_json(report.witness_pair->second)}};
    } else {
        out["witness"] = nullptr;
    }
    return out.dump(2) + "\n";
}

inline std::string run_reveal(const std::string& omega_file, Index d, const CommonOpts&) {
    const CMatrix omega = matrix_from_json(load_json_file(omega_file));
    const RevealPlan plan = build_reveal(omega, d);
    const RevealOutcome outcome = verify_reveal(plan);
    json out{{"d", d},
             {"r00", plan.r00},
             {"u_total", matrix_to_json(plan.u_total)},
             {"eta3", matrix_to_json(outcome.eta3)},
             {"achieved", outcome.achieved}};
    return out.dump(2) + "\n";
}

inline std::string run_hide_check(const std::string& state_file, const std::string& unitary_file,
                                  Index d_s, const CommonOpts& opts) {
    const CMatrix rho = matrix_from_json(load_json_file(state_file));
    const CMatrix w = matrix_from_json(load_json_file(unitary_file));
    if (d_s < 1 || rho.rows() % d_s != 0)
        throw ValidationError("hide-check: --ds must divide the state dimension");
    const DimSpec dims{d_s, rho.rows() / d_s, 1};
    const CorrelationDecomposition dec = decompose(rho, dims);
    const double residual = hiding_residual(w, dec.chi, dims, opts.unitary());
    const bool hidden = residual <= opts.hide();
    // cp reports the hiding-route certificate: the product-part map is CP and
    // it is the actual reduced dynamics only when the residual vanishes.
    bool cp = false;
    if (hidden)
        cp = cp_test(compose(product_assignment(dec.tau, dims), w, opts.consistency(),
                             opts.unitary()),
                     opts.cp_base())
                 .is_cp;
    json out{{"residual", residual}, {"hidden", hidden}, {"cp", cp}};
    return out.dump(2) + "\n";
}

inline std::string run_collide(const std::string& config_file, const CommonOpts&) {
    const CollisionConfig cfg = collision_config_from_json(load_json_file(config_file));
    const Trajectory traj = simulate(cfg);
    return trajectory_to_csv(traj, cfg);
}

/// Scenario dispatch. Exit codes: 0 success, 1 validation/schema error,
/// 2 numerical failure. Output goes to --out when given, stdout otherwise,
/// and is only written after the computation fully succeeds.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"assignment/dynamical map analysis for initially correlated "
                 "open quantum systems"};
    app.require_subcommand(1);

    CommonOpts opts;

    std::string assignment_file, unitary_file, state_file, omega_file, config_file;
    Index reveal_d = 2;
    Index hide_ds = 2;

    CLI::App* analyze = app.add_subcommand(
        "analyze-assignment", "consistency residual and negativity witness of an assignment");
    analyze->add_option("file", assignment_file, "assignment JSON")->required();
    detail::add_common(analyze, opts);

    CLI::App* comp = app.add_subcommand(
        "compose", "compose an assignment with a unitary; report Choi/CP/positivity");
    comp->add_option("assignment", assignment_file, "assignment JSON")->required();
    comp->add_option("unitary", unitary_file, "unitary matrix JSON")->required();
    detail::add_common(comp, opts);

    CLI::App* rev = app.add_subcommand(
        "reveal", "build the correlation-revealing unitary for a nonpositive omega");
    rev->add_option("omega", omega_file, "omega matrix JSON")->required();
    rev->add_option("--d", reveal_d, "working dimension (d_S = d_Ec = d_Er)")->required();
    detail::add_common(rev, opts);

    CLI::App* hide = app.add_subcommand(
        "hide-check", "hiding residual of a coupling for a correlated state");
    hide->add_option("state", state_file, "bipartite state JSON")->required();
    hide->add_option("unitary", unitary_file, "coupling unitary JSON")->required();
    hide->add_option("--ds", hide_ds, "system dimension of the bipartite split")
        ->capture_default_str();
    detail::add_common(hide, opts);

    CLI::App* coll = app.add_subcommand("collide", "simulate a refreshing collision model");
    coll->add_option("config", config_file, "collision config JSON")->required();
    detail::add_common(coll, opts);

    try {
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }

    std::string payload;
    try {
        if (app.got_subcommand(analyze))
            payload = run_analyze_assignment(assignment_file, opts);
        else if (app.got_subcommand(comp))
            payload = run_compose(assignment_file, unitary_file, opts);
        else if (app.got_subcommand(rev))
            payload = run_reveal(omega_file, reveal_d, opts);
        else if (app.got_subcommand(hide))
            payload = run_hide_check(state_file, unitary_file, hide_ds, opts);
        else
            payload = run_collide(config_file, opts);

        if (!opts.out_path.empty())
            write_text_file(opts.out_path, payload);
        else
            out << payload;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const json::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const NumericError& e) {
        err << "numerical failure: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "numerical failure: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

}  // namespace corrmap::cli

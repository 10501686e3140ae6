// Command-line laboratory for the cubic heat equation u_t = Δu + u³ on a
// periodic box: time-stepped runs, Besov diagnostics, Picard fixed points and
// Fourier-side blow-up certificates.  Every command writes its artifacts plus
// a manifest under --output-dir; exit codes: 0 ok, 1 configuration error,
// 2 numerical failure, 3 internal inconsistency.

#include <fstream>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "chl/run.hpp"

namespace {

using chl::json;

// flags write through `staged`; only keys the user actually set are merged
// over the config file, so file values survive unless overridden
struct Staged {
    json values;

    std::function<void(const std::string&)> str(const std::string& key) {
        return [this, key](const std::string& v) { values[key] = v; };
    }
    std::function<void(double)> num(const std::string& key) {
        return [this, key](double v) { values[key] = v; };
    }
    std::function<void(int)> integer(const std::string& key) {
        return [this, key](int v) { values[key] = v; };
    }
    std::function<void(bool)> flag(const std::string& key) {
        return [this, key](bool v) { values[key] = v; };
    }
    std::function<void(const std::vector<int>&)> ints(const std::string& key) {
        return [this, key](const std::vector<int>& v) { values[key] = v; };
    }
};

void add_grid_flags(CLI::App* cmd, Staged& st) {
    cmd->add_option_function<int>("--dim", st.integer("dim"), "spatial dimension (1-3)");
    cmd->add_option_function<int>("--n", st.integer("n"), "lattice points per axis (power of 2)");
    cmd->add_option_function<double>("--box", st.num("L"), "box edge length");
}

void add_bump_flags(CLI::App* cmd, Staged& st) {
    cmd->add_option_function<double>("--bump-center", st.num("bump_center"),
                                     "bump ball center on the first frequency axis");
    cmd->add_option_function<double>("--bump-radius", st.num("bump_radius"), "bump ball radius");
    cmd->add_option_function<double>("--bump-amplitude", st.num("bump_amplitude"),
                                     "bump spectrum amplitude");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"chl: a numerical laboratory for the cubic heat equation"};
    app.require_subcommand(1);

    std::string config_path;
    app.add_option("--config", config_path, "JSON config file (flags override its keys)");

    Staged st;
    app.add_option_function<std::string>("--output-dir", st.str("output_dir"),
                                         "artifact directory (default chl_out)");
    app.add_option_function<int>("--seed", st.integer("seed"), "seed for randomized data");

    CLI::App* simulate = app.add_subcommand("simulate", "time-step the mild solution");
    add_grid_flags(simulate, st);
    add_bump_flags(simulate, st);
    simulate->add_option_function<std::string>("--u0", st.str("u0"),
                                               "datum spec (constant:c, bump[:a], u0N:N, osc[:a], "
                                               "gaussian:t, random:kmax[:a], file:path)");
    simulate->add_option_function<double>("--tmax", st.num("t_end"), "integration horizon");
    simulate->add_option_function<double>("--dt", st.num("dt_init"), "initial step size");
    simulate->add_option_function<double>("--dt-min", st.num("dt_min"), "smallest allowed step");
    simulate->add_option_function<double>("--safety", st.num("safety"), "step-error tolerance");
    simulate->add_option_function<double>("--cap", st.num("cap"), "amplitude blow-up threshold");
    simulate->add_option_function<double>("--track-p", st.num("track_p"),
                                          "exponent of the t^{σ/2}‖u‖_p trace, in (3,9)");
    simulate->add_flag_function("--linear", st.flag("linear"), "drop the cubic term");
    simulate->add_flag_function("--fixed-dt", st.flag("fixed_dt"), "disable step adaptivity");
    simulate->add_option_function<int>("--diag-stride", st.integer("diag_stride"),
                                       "record every k-th step");
    simulate->add_option_function<int>("--max-steps", st.integer("max_steps"),
                                       "abort with a numerical error beyond this step count");

    CLI::App* besov = app.add_subcommand("besov", "Besov norms (grid or shell model)");
    add_grid_flags(besov, st);
    add_bump_flags(besov, st);
    besov->add_option_function<std::string>("--datum", st.str("datum"),
                                            "u0N (shell model) or any datum spec (grid mode)");
    besov->add_option_function<int>("--N", st.integer("N"), "shell count for the u0N family");
    besov->add_option_function<double>("--s", st.num("s"), "regularity index");
    besov->add_option_function<double>("--p", st.num("p"), "Lebesgue exponent");
    besov->add_option_function<double>("--q", st.num("q"), "summation exponent (inf allowed)");

    CLI::App* picard = app.add_subcommand("picard", "Duhamel fixed-point iteration");
    add_grid_flags(picard, st);
    add_bump_flags(picard, st);
    picard->add_option_function<std::string>("--u0", st.str("u0"), "datum spec");
    picard->add_option_function<double>("--p", st.num("p"), "Weissler exponent in (3,9)");
    picard->add_option_function<double>("--tmax", st.num("tmax"), "time horizon");
    picard->add_option_function<int>("--nodes", st.integer("nodes"), "time-grid nodes");
    picard->add_option_function<double>("--gamma", st.num("gamma"), "mesh grading exponent");
    picard->add_option_function<double>("--tol", st.num("tol"), "Y-norm update tolerance");
    picard->add_option_function<int>("--max-iter", st.integer("max_iter"), "iteration cap");

    CLI::App* certify = app.add_subcommand("certify", "amplitude blow-up certificate");
    add_grid_flags(certify, st);
    add_bump_flags(certify, st);
    certify->add_option_function<double>("--delta", st.num("delta"), "window parameter δ");
    certify->add_option_function<double>("--A", st.num("A"), "datum amplitude");
    certify->add_option_function<std::string>("--w", st.str("w"),
                                              "bump mass source: default (‖ŵ‖₁=1), bump, file:path");
    certify->add_option_function<int>("--k-max", st.integer("k_max"), "recursion table depth");

    CLI::App* thm33 = app.add_subcommand("certify-thm33",
                                         "chained certificate for the oscillating family");
    add_grid_flags(thm33, st);
    add_bump_flags(thm33, st);
    thm33->add_option_function<double>("--delta", st.num("delta"), "window parameter δ");
    thm33->add_option_function<int>("--N", st.integer("N"), "shell count (≥ 16)");
    thm33->add_option_function<int>("--k-max", st.integer("k_max"), "recursion table depth");

    CLI::App* construct = app.add_subcommand("construct", "build a datum and snapshot it");
    add_grid_flags(construct, st);
    add_bump_flags(construct, st);
    construct->add_option_function<std::string>("--u0", st.str("u0"), "datum spec");
    construct->add_option_function<std::string>("--out", st.str("out"), "snapshot file name");
    construct->add_flag_function("--spectral", st.flag("spectral"),
                                 "store the spectrum instead of samples");

    CLI::App* sweep = app.add_subcommand("sweep", "parameter sweeps (tau, besov, thm33)");
    add_grid_flags(sweep, st);
    add_bump_flags(sweep, st);
    sweep->add_option_function<std::string>("--mode", st.str("mode"), "tau | besov | thm33");
    sweep->add_option_function<double>("--delta", st.num("delta"), "window parameter δ");
    sweep->add_option_function<double>("--s", st.num("s"), "regularity index (besov mode)");
    sweep->add_option_function<double>("--p", st.num("p"), "Lebesgue exponent (besov mode)");
    sweep->add_option_function<double>("--q", st.num("q"), "summation exponent (besov mode)");
    sweep->add_option_function<int>("--k-max", st.integer("k_max"), "table depth (thm33 mode)");
    sweep->add_option_function<std::vector<int>>("--N-values", st.ints("N_values"),
                                                 "shell counts to sweep");

    // let --output-dir/--seed (and --config) appear after the subcommand too
    for (CLI::App* cmd : {simulate, besov, picard, certify, thm33, construct, sweep})
        cmd->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // --help exits 0; every other parse failure is a configuration error
        return app.exit(e) == 0 ? 0 : 1;
    }

    json config;
    if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) {
            std::cerr << "configuration error: cannot open config file '" << config_path << "'"
                      << std::endl;
            return 1;
        }
        try {
            in >> config;
        } catch (const std::exception& e) {
            std::cerr << "configuration error: " << e.what() << std::endl;
            return 1;
        }
        if (!config.is_object()) {
            std::cerr << "configuration error: config file must hold a JSON object" << std::endl;
            return 1;
        }
    }

    for (CLI::App* cmd : {simulate, besov, picard, certify, thm33, construct, sweep})
        if (cmd->parsed()) config["command"] = cmd->get_name();

    // flags the user set override config-file keys
    for (auto it = st.values.begin(); it != st.values.end(); ++it)
        config[it.key()] = it.value();

    return chl::run_command(config);
}

#include "chl/run.hpp"

#include <cmath>
#include <filesystem>
#include <iostream>
#include <limits>
#include <numbers>
#include <vector>

#include "chl/chf1.hpp"
#include "chl/errors.hpp"
#include "chl/fft.hpp"
#include "chl/field_ops.hpp"

namespace chl {

namespace {

namespace fs = std::filesystem;

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    parts.push_back(cur);
    return parts;
}

double to_double(const std::string& s, const char* what) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ConfigError(std::string("cannot parse ") + what + " from '" + s + "'");
    }
}

Grid grid_from(const json& cfg) {
    return Grid(cfg.at("dim").get<int>(), cfg.at("n").get<int>(), cfg.at("L").get<double>());
}

BumpSpec bump_from(const json& cfg) {
    BumpSpec spec;
    spec.center[0] = cfg.at("bump_center").get<double>();
    spec.radius = cfg.at("bump_radius").get<double>();
    spec.amplitude = cfg.at("bump_amplitude").get<double>();
    return spec;
}

// ---- per-command defaults --------------------------------------------------

void put_defaults(json& c, const json& defaults) {
    for (auto it = defaults.begin(); it != defaults.end(); ++it)
        if (!c.contains(it.key())) c[it.key()] = it.value();
}

const json kGridDefaults = {{"dim", 3}, {"n", 64}, {"L", 16.0 * std::numbers::pi}};
const json kBumpDefaults = {{"bump_center", 1.0 / 6.0},
                            {"bump_radius", 1.0 / 6.0},
                            {"bump_amplitude", 1.0}};

} // namespace

json normalize_config(const json& config) {
    if (!config.is_object() || !config.contains("command"))
        throw ConfigError("config must be a JSON object with a 'command' key");
    json c = config;
    const std::string cmd = c["command"].get<std::string>();
    put_defaults(c, {{"seed", 0}, {"output_dir", "chl_out"}});

    if (cmd == "simulate") {
        put_defaults(c, kGridDefaults);
        put_defaults(c, kBumpDefaults);
        put_defaults(c, {{"u0", "bump"},
                         {"t_end", 1.0},
                         {"dt_init", 1e-3},
                         {"dt_min", 0.0},
                         {"safety", 0.05},
                         {"cap", 1e8},
                         {"track_p", 6.0},
                         {"linear", false},
                         {"fixed_dt", false},
                         {"diag_stride", 1},
                         {"max_steps", 2000000}});
    } else if (cmd == "besov") {
        put_defaults(c, {{"datum", "u0N"}, {"N", 16}, {"s", -2.0 / 3.0}, {"p", 9.0}, {"q", 3.0}});
        put_defaults(c, json{{"dim", 1}, {"n", 4096}, {"L", 16.0 * std::numbers::pi}});
        put_defaults(c, kBumpDefaults);
    } else if (cmd == "picard") {
        put_defaults(c, json{{"dim", 1}, {"n", 256}, {"L", 16.0 * std::numbers::pi}});
        put_defaults(c, kBumpDefaults);
        put_defaults(c, {{"u0", "bump"},
                         {"p", 6.0},
                         {"tmax", 1.0},
                         {"nodes", 32},
                         {"gamma", 4.0},
                         {"tol", 1e-10},
                         {"max_iter", 40}});
    } else if (cmd == "certify") {
        put_defaults(c, kGridDefaults);
        put_defaults(c, kBumpDefaults);
        put_defaults(c, {{"delta", 0.5}, {"A", 1.0}, {"w", "default"}, {"k_max", 40}});
    } else if (cmd == "certify-thm33") {
        put_defaults(c, kGridDefaults);
        put_defaults(c, kBumpDefaults);
        put_defaults(c, {{"delta", 0.5}, {"N", 16}, {"k_max", 40}});
    } else if (cmd == "construct") {
        put_defaults(c, kGridDefaults);
        put_defaults(c, kBumpDefaults);
        put_defaults(c, {{"u0", "bump"}, {"out", "datum.chf1"}, {"spectral", false}});
    } else if (cmd == "sweep") {
        put_defaults(c, {{"mode", "tau"}});
        const std::string mode = c["mode"].get<std::string>();
        if (mode == "thm33") {
            put_defaults(c, kGridDefaults);
            put_defaults(c, kBumpDefaults);
            put_defaults(c, {{"delta", 0.5}, {"k_max", 40}, {"N_values", json::array({16, 32, 64, 128, 256})}});
        } else if (mode == "besov") {
            put_defaults(c, json{{"dim", 1}, {"n", 4096}, {"L", 16.0 * std::numbers::pi}});
            put_defaults(c, kBumpDefaults);
            put_defaults(c, {{"s", -2.0 / 3.0},
                             {"p", 9.0},
                             {"q", 3.0},
                             {"N_values", json::array({100, 1000, 10000, 100000})}});
        } else if (mode == "tau") {
            put_defaults(c, {{"delta", 0.5},
                             {"N_values", json::array({16, 100, 1000, 10000, 100000})}});
        } else {
            throw ConfigError("sweep: mode must be one of thm33|besov|tau");
        }
    } else {
        throw ConfigError("unknown command '" + cmd + "'");
    }
    return c;
}

RealField build_datum(const std::string& spec, const Grid& grid, const json& config) {
    const std::vector<std::string> parts = split(spec, ':');
    const std::string& kind = parts[0];

    if (kind == "constant") {
        if (parts.size() != 2) throw ConfigError("datum 'constant' needs a value: constant:<c>");
        RealField f(grid);
        f.values.setConstant(to_double(parts[1], "constant datum value"));
        return f;
    }
    if (kind == "bump") {
        BumpSpec bs = bump_from(config);
        if (parts.size() == 2) bs.amplitude *= to_double(parts[1], "bump amplitude");
        else if (parts.size() > 2) throw ConfigError("datum 'bump' takes at most one argument");
        return build_bump(bs, grid);
    }
    if (kind == "u0N") {
        if (parts.size() != 2) throw ConfigError("datum 'u0N' needs a shell count: u0N:<N>");
        OscillatingDatumSpec os;
        os.N = static_cast<int>(to_double(parts[1], "shell count"));
        os.bump = bump_from(config);
        return build_u0N(os, grid);
    }
    if (kind == "osc") {
        // two-shell band-limited relative of the oscillating family
        if (parts.size() > 2) throw ConfigError("datum 'osc' takes at most one argument");
        const double amp = parts.size() == 2 ? to_double(parts[1], "osc amplitude") : 1.0;
        return dft_inverse(oscillating_spectrum({1, 2}, bump_from(config), grid, amp));
    }
    if (kind == "gaussian") {
        if (parts.size() != 2) throw ConfigError("datum 'gaussian' needs a time: gaussian:<t>");
        return gaussian(to_double(parts[1], "gaussian time"), grid);
    }
    if (kind == "random") {
        if (parts.size() > 3) throw ConfigError("datum 'random' takes kmax and optional amplitude");
        const int kmax = parts.size() >= 2 ? static_cast<int>(to_double(parts[1], "kmax")) : 4;
        const double amp = parts.size() == 3 ? to_double(parts[2], "random amplitude") : 1.0;
        const std::uint64_t seed = config.at("seed").get<std::uint64_t>();
        return dft_inverse(random_band_limited(grid, kmax, seed, amp));
    }
    if (kind == "file") {
        if (parts.size() != 2) throw ConfigError("datum 'file' needs a path: file:<path>");
        RealField f = read_chf1_real(parts[1]);
        if (f.grid != grid)
            throw GridMismatch("datum file '" + parts[1] + "' does not match the requested grid");
        return f;
    }
    throw ConfigError("unknown datum spec '" + spec + "'");
}

namespace {

struct Artifacts {
    fs::path dir;
    std::vector<std::string> names;

    std::string path_of(const std::string& name) {
        names.push_back(name);
        return (dir / name).string();
    }
};

json run_simulate(const json& c, Artifacts& art) {
    const Grid grid = grid_from(c);
    const RealField u0 = build_datum(c.at("u0").get<std::string>(), grid, c);

    SolverConfig sc;
    sc.t_end = c.at("t_end").get<double>();
    sc.dt_init = c.at("dt_init").get<double>();
    sc.dt_min = c.at("dt_min").get<double>();
    sc.safety = c.at("safety").get<double>();
    sc.amplitude_cap = c.at("cap").get<double>();
    sc.track_p = c.at("track_p").get<double>();
    sc.nonlinear = !c.at("linear").get<bool>();
    sc.fixed_dt = c.at("fixed_dt").get<bool>();
    sc.diag_stride = c.at("diag_stride").get<int>();
    sc.max_steps = c.at("max_steps").get<int>();

    const SolveResult res = solve(u0, sc);
    write_diagnostics_csv(art.path_of("diagnostics.csv"), res);
    write_chf1(art.path_of("final_state.chf1"), res.final_state);
    json rep = report_json(res);
    write_text(art.path_of("solve.json"), rep.dump(2) + "\n");
    return rep;
}

json run_besov(const json& c, Artifacts& art) {
    const std::string datum = c.at("datum").get<std::string>();
    const double s = c.at("s").get<double>(), p = c.at("p").get<double>();
    const double q = c.at("q").get<double>();
    json rep;
    if (datum == "u0N") {
        rep = report_json(shell_besov_u0N(c.at("N").get<int>(), bump_from(c), grid_from(c),
                                          s, p, q));
    } else {
        const Grid grid = grid_from(c);
        rep = report_json(besov_norm(build_datum(datum, grid, c), s, p, q));
    }
    write_text(art.path_of("besov.json"), rep.dump(2) + "\n");
    return rep;
}

json run_picard(const json& c, Artifacts& art) {
    const Grid grid = grid_from(c);
    const RealField u0 = build_datum(c.at("u0").get<std::string>(), grid, c);
    const double p = c.at("p").get<double>();
    const TimeGrid tg = make_time_grid(c.at("tmax").get<double>(), c.at("nodes").get<int>(),
                                       c.at("gamma").get<double>(), p);
    const PicardTrace trace = picard_iterate(u0, tg, p, c.at("max_iter").get<int>(),
                                             c.at("tol").get<double>());
    json rep = report_json(trace);
    write_text(art.path_of("picard.json"), rep.dump(2) + "\n");
    if (!trace.solution.empty())
        write_chf1(art.path_of("picard_final.chf1"), trace.solution.back());
    return rep;
}

double w_l1_from(const json& c) {
    const std::string w = c.at("w").get<std::string>();
    if (w == "default") return 1.0;
    if (w == "bump") return l1_norm_spectral(bump_spectrum(bump_from(c), grid_from(c)));
    const std::vector<std::string> parts = split(w, ':');
    if (parts.size() == 2 && parts[0] == "file")
        return l1_norm_spectral(read_chf1_spectral(parts[1]));
    throw ConfigError("certify: --w must be default, bump or file:<path.chf1>");
}

json run_certify(const json& c, Artifacts& art) {
    RecursionParams params;
    params.delta = c.at("delta").get<double>();
    params.A = c.at("A").get<double>();
    params.log_w_l1 = std::log(w_l1_from(c));
    params.k_max = c.at("k_max").get<int>();
    json rep = report_json(certify(params));
    write_text(art.path_of("certificate.json"), rep.dump(2) + "\n");
    return rep;
}

json run_certify_thm33(const json& c, Artifacts& art) {
    json rep = report_json(certify_theorem33(c.at("N").get<int>(), c.at("delta").get<double>(),
                                             bump_from(c), grid_from(c),
                                             c.at("k_max").get<int>()));
    write_text(art.path_of("thm33_certificate.json"), rep.dump(2) + "\n");
    return rep;
}

json run_construct(const json& c, Artifacts& art) {
    const Grid grid = grid_from(c);
    const RealField f = build_datum(c.at("u0").get<std::string>(), grid, c);
    const SpectralField F = dft_forward(f);
    const std::string out = c.at("out").get<std::string>();
    if (c.at("spectral").get<bool>())
        write_chf1(art.path_of(out), F);
    else
        write_chf1(art.path_of(out), f);
    json rep = {{"kind", "construct"},
                {"file", out},
                {"L3", lp_norm(f, 3.0)},
                {"Linf", lp_norm(f, std::numeric_limits<double>::infinity())},
                {"l1_spectral", l1_norm_spectral(F)},
                {"min_spec", min_real_coeff(F)},
                {"max_imag", max_imag_coeff(F)}};
    write_text(art.path_of("construct.json"), rep.dump(2) + "\n");
    return rep;
}

json run_sweep(const json& c, Artifacts& art) {
    const std::string mode = c.at("mode").get<std::string>();
    json rows = json::array();
    json rep = {{"kind", "sweep"}, {"mode", mode}};

    if (mode == "tau") {
        const double delta = c.at("delta").get<double>();
        for (int N : c.at("N_values").get<std::vector<int>>())
            rows.push_back({{"N", N}, {"tau_N", tau_N(N, delta)}});
    } else if (mode == "besov") {
        const BumpSpec bump = bump_from(c);
        const Grid ref = grid_from(c);
        for (int N : c.at("N_values").get<std::vector<int>>()) {
            const ShellBesovReport r = shell_besov_u0N(N, bump, ref, c.at("s").get<double>(),
                                                       c.at("p").get<double>(),
                                                       c.at("q").get<double>());
            rows.push_back({{"N", N}, {"value", r.value}, {"epsilon_N", r.epsilon}});
        }
    } else { // thm33
        const BumpSpec bump = bump_from(c);
        const Grid grid = grid_from(c);
        const double delta = c.at("delta").get<double>();
        const int k_max = c.at("k_max").get<int>();
        int smallest = -1;
        for (int N : c.at("N_values").get<std::vector<int>>()) {
            const Thm33Certificate cert = certify_theorem33(N, delta, bump, grid, k_max);
            rows.push_back({{"N", N},
                            {"tau_N", cert.tau},
                            {"verdict", verdict_name(cert.chain.verdict)},
                            {"log_coeff", cert.chain.log_coeff}});
            if (smallest < 0 && cert.chain.verdict == CertVerdict::Certified) smallest = N;
        }
        if (smallest >= 0)
            rep["smallest_certified_N"] = smallest;
        else
            rep["smallest_certified_N"] = nullptr;
    }
    rep["rows"] = rows;
    write_text(art.path_of("sweep.json"), rep.dump(2) + "\n");
    return rep;
}

} // namespace

json run_config(const json& config) {
    const json c = normalize_config(config);
    Artifacts art;
    art.dir = fs::path(c.at("output_dir").get<std::string>());
    fs::create_directories(art.dir);

    const std::string cmd = c.at("command").get<std::string>();
    json rep;
    if (cmd == "simulate") rep = run_simulate(c, art);
    else if (cmd == "besov") rep = run_besov(c, art);
    else if (cmd == "picard") rep = run_picard(c, art);
    else if (cmd == "certify") rep = run_certify(c, art);
    else if (cmd == "certify-thm33") rep = run_certify_thm33(c, art);
    else if (cmd == "construct") rep = run_construct(c, art);
    else rep = run_sweep(c, art);

    const json manifest = make_manifest(c, art.names);
    write_text((art.dir / "manifest.json").string(), manifest.dump(2) + "\n");
    return rep;
}

int run_command(const json& config) {
    try {
        std::cout << run_config(config).dump(2) << std::endl;
        return 0;
    } catch (const InternalInconsistency& e) {
        std::cerr << "internal inconsistency: " << e.what() << std::endl;
        return 3;
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << std::endl;
        return 1;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << std::endl;
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "configuration error: " << e.what() << std::endl;
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << std::endl;
        return 2;
    }
}

} // namespace chl

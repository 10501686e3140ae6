#include "chl/reports.hpp"

#include <cstdio>
#include <fstream>

#include "chl/errors.hpp"

namespace chl {

std::uint64_t fnv1a(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string outcome_name(Outcome o) {
    switch (o) {
        case Outcome::Global: return "Global";
        case Outcome::Blowup: return "Blowup";
        case Outcome::Underresolved: return "Underresolved";
    }
    return "?";
}

std::string verdict_name(CertVerdict v) {
    return v == CertVerdict::Certified ? "Certified" : "NotCertified";
}

std::string verdict_name(PicardVerdict v) {
    switch (v) {
        case PicardVerdict::Converged: return "Converged";
        case PicardVerdict::Diverged: return "Diverged";
        case PicardVerdict::Stalled: return "Stalled";
    }
    return "?";
}

json report_json(const BesovReport& r) {
    json blocks = json::array();
    for (const auto& [j, norm] : r.blocks) blocks.push_back({{"j", j}, {"lp_norm", norm}});
    return {{"kind", "besov"},
            {"s", r.s},
            {"p", r.p},
            {"q", r.q},
            {"j_min", r.j_min},
            {"j_max", r.j_max},
            {"shell_model", r.shell_model},
            {"blocks", blocks},
            {"value", r.total}};
}

json report_json(const ShellBesovReport& r) {
    json shells = json::array();
    for (std::size_t i = 0; i < r.shell_norms.size(); ++i)
        shells.push_back({{"k", static_cast<int>(i) + 1},
                          {"lp_norm", r.shell_norms[i]},
                          {"weighted", r.weighted[i]}});
    return {{"kind", "besov_shell_model"},
            {"N", r.N},
            {"s", r.s},
            {"p", r.p},
            {"q", r.q},
            {"epsilon_N", r.epsilon},
            {"shells", shells},
            {"value", r.value}};
}

json report_json(const PicardTrace& t) {
    json rows = json::array();
    for (const PicardIterateRow& row : t.iterates)
        rows.push_back({{"iter", row.iter},
                        {"y_norm", row.y_norm},
                        {"strong_norm", row.strong_norm},
                        {"l3_norm", row.l3_norm},
                        {"update_ratio", row.update_ratio}});
    return {{"kind", "picard"},
            {"verdict", verdict_name(t.verdict)},
            {"p", t.p},
            {"sigma", t.sigma},
            {"ball", t.ball},
            {"eta", t.eta},
            {"final_y", t.final_y},
            {"iterates", rows}};
}

json report_json(const BlowupCertificate& c) {
    json rows = json::array();
    for (const CertRow& row : c.per_k)
        rows.push_back({{"k", row.k},
                        {"t_k", row.t_k},
                        {"L_k", row.L_k},
                        {"coeff_3k", row.split.coeff},
                        {"resid", row.split.resid}});
    return {{"kind", "blowup_certificate"},
            {"delta", c.params.delta},
            {"A", c.params.A},
            {"log_w_l1", c.params.log_w_l1},
            {"k_max", c.params.k_max},
            {"a_min", c.a_min},
            {"log_coeff", c.log_coeff},
            {"margin", c.margin},
            {"verdict", verdict_name(c.verdict)},
            {"k_table", rows}};
}

json report_json(const Thm33Certificate& c) {
    return {{"kind", "thm33_certificate"},
            {"N", c.N},
            {"delta", c.delta},
            {"tau_N", c.tau},
            {"w_l1", c.w_l1},
            {"g_l1", c.g_l1},
            {"g_mass_rel_gap", c.g_mass_rel_gap},
            {"support_ok", c.support_ok},
            {"a_min_g", c.a_min_g},
            {"verdict", verdict_name(c.chain.verdict)},
            {"chain", report_json(c.chain)}};
}

json report_json(const SolveResult& r) {
    json out = {{"kind", "solve"},
                {"outcome", outcome_name(r.outcome)},
                {"t_final", r.t_final},
                {"steps", r.steps},
                {"rows", static_cast<int>(r.diagnostics.size())}};
    if (r.outcome == Outcome::Blowup) out["t_star"] = r.t_star;
    if (!r.diagnostics.empty()) {
        const DiagRow& last = r.diagnostics.back();
        out["final"] = {{"t", last.t},
                        {"L3", last.l3},
                        {"Linf", last.linf},
                        {"weissler_p", last.weissler},
                        {"min_spec", last.min_spec},
                        {"max_spec", last.max_spec}};
    }
    if (!r.note.empty()) out["note"] = r.note;
    return out;
}

json make_manifest(const json& config, const std::vector<std::string>& artifacts) {
    char hash[32];
    std::snprintf(hash, sizeof hash, "%016llx",
                  static_cast<unsigned long long>(fnv1a(config.dump())));
    return {{"version", kVersion},
            {"config", config},
            {"config_hash", hash},
            {"artifacts", artifacts}};
}

void write_text(const std::string& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("write_text: cannot open '" + path + "' for writing");
    out << body;
    if (!out) throw ConfigError("write_text: short write to '" + path + "'");
}

} // namespace chl

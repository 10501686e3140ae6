#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "chl/blowup.hpp"
#include "chl/data_factory.hpp"
#include "chl/littlewood_paley.hpp"
#include "chl/picard.hpp"
#include "chl/semigroup.hpp"

namespace chl {

using json = nlohmann::ordered_json;

/// Library version echoed into every manifest.
inline constexpr const char* kVersion = "0.1.0";

/// FNV-1a over a byte string (config fingerprints in manifests).
std::uint64_t fnv1a(const std::string& bytes);

std::string outcome_name(Outcome o);
std::string verdict_name(CertVerdict v);
std::string verdict_name(PicardVerdict v);

json report_json(const BesovReport& r);
json report_json(const ShellBesovReport& r);
json report_json(const PicardTrace& t);
json report_json(const BlowupCertificate& c);
json report_json(const Thm33Certificate& c);

/// Run summary without the bulk diagnostics (those go to CSV).
json report_json(const SolveResult& r);

/// Manifest body: version, config, config hash, artifact list.
json make_manifest(const json& config, const std::vector<std::string>& artifacts);

/// Write UTF-8 text; parent directory must exist.
void write_text(const std::string& path, const std::string& body);

} // namespace chl

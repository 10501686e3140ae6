#pragma once

#include "chl/reports.hpp"

namespace chl {

/// Fill in defaults for every key the command understands, so the manifest
/// echoes the effective configuration.  Throws ConfigError on unknown
/// commands or malformed values.
json normalize_config(const json& config);

/// Execute one command described by a JSON config (key "command" plus
/// per-command parameters; see normalize_config).  Writes all artifacts under
/// config["output_dir"] and returns the report JSON.
json run_config(const json& config);

/// run_config wrapped in the exit-code policy: 0 success, 1 configuration
/// error, 2 numerical failure, 3 internal inconsistency.  Diagnostics go to
/// stderr; the report JSON goes to stdout.
int run_command(const json& config);

/// Parse a datum spec string ("constant:1", "bump", "bump:2.5", "u0N:16",
/// "osc:0.5", "gaussian:0.25", "random:4:1.0", "file:path.chf1") against a
/// grid.  The BumpSpec fields are taken from `config` when present.
RealField build_datum(const std::string& spec, const Grid& grid, const json& config);

} // namespace chl

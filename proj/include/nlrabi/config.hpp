#ifndef NLRABI_CONFIG_HPP
#define NLRABI_CONFIG_HPP

#include "nlrabi/sweep.hpp"

namespace nlrabi {

// A parsed config file: the sweep spec plus the output destination keys.
struct CliConfig {
    SweepSpec spec;
    std::string out_path;  // empty = stdout
    TableFormat format = TableFormat::csv;

    friend bool operator==(const CliConfig&, const CliConfig&) = default;
};

// Flat `key = value` text, '#' comments, no sections. Unknown keys are
// rejected with line diagnostics (ConfigError). Omitted keys keep their
// defaults (big_omega 1, omega 0.1, rtol 1e-8, ...).
CliConfig parse_config_text(const std::string& text);
CliConfig parse_config(const std::string& path);

// Canonical config text for a spec; parse_config_text round-trips it exactly
// (floats are emitted with 17 significant digits).
std::string emit_config(const SweepSpec& spec);
std::string emit_config(const CliConfig& config);

}  // namespace nlrabi

#endif

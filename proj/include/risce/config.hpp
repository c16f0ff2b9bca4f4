#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "risce/sim.hpp"

namespace risce {

/// Bad configuration; the message names the offending key. Exit code 1.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unreadable input or unwritable output. Exit code 2.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raw key -> value settings, keyed by the config-file spelling
/// (m, n, tau_p, snr, snr_db, trials, seed, pattern, estimators, beta_bs,
/// beta_bs_irs, d_bs, d_irs, pilots, resample_angles).
using Settings = std::map<std::string, std::string>;

/// Reads either a flat `key = value` file (# comments) or a JSON run
/// manifest written by write_manifest().
Settings read_settings_file(const std::string& path);
Settings parse_flat_settings(const std::string& text);
Settings parse_manifest_settings(const std::string& json_text);

/// Paper-scale defaults, overlaid by `file`, then by `overrides`.
SystemConfig parse_config(const Settings& file, const Settings& overrides = {});
SystemConfig parse_config(const std::optional<std::string>& path,
                          const Settings& overrides = {});

/// "min:step:max", inclusive of max when it lies on the grid.
std::vector<double> parse_snr_range(const std::string& spec);

/// Settings that parse back to exactly `cfg`.
Settings to_settings(const SystemConfig& cfg);

}  // namespace risce

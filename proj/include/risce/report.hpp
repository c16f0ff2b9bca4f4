#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "risce/config.hpp"
#include "risce/sim.hpp"

namespace risce {

/// Nine significant digits, fixed notation.
std::string format_sig9(double value);

/// Header `snr_db,<estimator>_<group>_emp,<estimator>_<group>_cf,...` with
/// group `direct` or `cascade_avg`; `_emp` columns only when the curves
/// carry Monte Carlo values.
std::string nmse_csv(const std::vector<NMSECurve>& curves, ChannelGroup group);

struct RunOptions {
  std::filesystem::path out_dir = "out";
  unsigned threads = 1;
  bool closed_form_only = false;
};

struct RunSummary {
  std::vector<NMSECurve> curves;
  std::vector<std::filesystem::path> outputs;
  double duration_s = 0.0;
};

/// Runs the sweep and writes nmse_direct.csv, nmse_cascade.csv and
/// manifest.json into opts.out_dir. Throws IoError on write failures.
RunSummary run_sweep_to_disk(const SystemConfig& cfg, const RunOptions& opts);

std::string manifest_json(const SystemConfig& cfg, const RunSummary& summary);

}  // namespace risce

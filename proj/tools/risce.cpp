// Command-line front end: resolves a configuration, runs the NMSE sweep and
// writes nmse_direct.csv, nmse_cascade.csv and manifest.json.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "risce/config.hpp"
#include "risce/report.hpp"
#include "risce/version.hpp"

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitIo = 2;

unsigned default_threads() {
  if (const char* env = std::getenv("RISCE_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n > 0) return static_cast<unsigned>(n);
    } catch (const std::exception&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

struct ConfigFlags {
  std::optional<std::string> config_path;
  risce::Settings overrides;

  void attach(CLI::App& app) {
    app.add_option("--config", config_path,
                   "Config file (key = value) or a manifest.json from a previous run");
    add(app, "--m", "m", "Base-station antennas");
    add(app, "--n", "n", "RIS elements");
    add(app, "--tau-p", "tau_p", "Pilot symbols per coherence interval");
    add(app, "--snr", "snr", "SNR grid in dB as min:step:max");
    add(app, "--snr-db", "snr_db", "Explicit comma-separated SNR list in dB");
    add(app, "--trials", "trials", "Monte Carlo trials per SNR point");
    add(app, "--seed", "seed", "Master seed");
    add(app, "--pattern", "pattern", "dft | onoff");
    add(app, "--estimators", "estimators", "Comma list of mvu-onoff, mvu-dft, mmse");
    add(app, "--beta-bs", "beta_bs", "Direct-link path loss (cascade gets the rest)");
    add(app, "--beta-bs-irs", "beta_bs_irs", "BS-RIS path loss");
    add(app, "--d-bs", "d_bs", "Antenna spacing in wavelengths");
    add(app, "--d-irs", "d_irs", "RIS element spacing in wavelengths");
    add(app, "--pilots", "pilots", "Pilot symbols as re:im,re:im,...");
    add(app, "--resample-angles", "resample_angles", "Redraw LoS angles every trial (true/false)");
  }

 private:
  void add(CLI::App& app, const std::string& flag, const std::string& key,
           const std::string& help) {
    app.add_option_function<std::string>(
        flag, [this, key](const std::string& v) { overrides[key] = v; }, help);
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"RIS-aided MISO uplink channel estimation: NMSE sweeps"};
  app.set_version_flag("--version", risce::kVersion);
  app.require_subcommand(1);

  ConfigFlags run_flags;
  risce::RunOptions opts;
  opts.threads = default_threads();
  std::string out_dir = "out";
  auto* run = app.add_subcommand("run", "Run the sweep and write CSVs + manifest");
  run_flags.attach(*run);
  run->add_option("--out", out_dir, "Output directory");
  run->add_flag("--emit-closed-form-only", opts.closed_form_only,
                "Write closed-form curves only, skip Monte Carlo");
  run->add_option("--threads", opts.threads,
                  "Worker threads (default: $RISCE_THREADS or all cores)")
      ->check(CLI::PositiveNumber);

  ConfigFlags show_flags;
  auto* show = app.add_subcommand("config", "Print the resolved configuration");
  show_flags.attach(*show);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*show) {
      const auto cfg = risce::parse_config(show_flags.config_path, show_flags.overrides);
      risce::RunSummary empty;
      std::cout << risce::manifest_json(cfg, empty);
      return 0;
    }
    const auto cfg = risce::parse_config(run_flags.config_path, run_flags.overrides);
    opts.out_dir = out_dir;
    const auto summary = risce::run_sweep_to_disk(cfg, opts);
    for (const auto& p : summary.outputs) std::cout << p.string() << "\n";
    std::cerr << "done in " << summary.duration_s << " s\n";
    return 0;
  } catch (const risce::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const risce::IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kExitIo;
  }
}

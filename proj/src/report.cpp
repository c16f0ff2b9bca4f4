#include "risce/report.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <system_error>

#include <nlohmann/json.hpp>

#include "risce/version.hpp"

namespace risce {
namespace {

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << text;
  out.close();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

std::string format_g9(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", value);
  return buf;
}

}  // namespace

std::string format_sig9(double value) {
  if (!std::isfinite(value)) return "nan";
  if (value == 0.0) return "0";
  const int exponent = static_cast<int>(std::floor(std::log10(std::abs(value))));
  const int decimals = std::max(0, 8 - exponent);
  char buf[512];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
  return buf;
}

std::string nmse_csv(const std::vector<NMSECurve>& curves, ChannelGroup group) {
  const std::string suffix = group == ChannelGroup::Direct ? "_direct" : "_cascade_avg";
  std::string out = "snr_db";
  if (!curves.empty()) {
    const bool emp = curves.front().has_empirical;
    for (const auto& p : curves.front().points) {
      const std::string name = std::string(to_string(p.kind)) + suffix;
      if (emp) out += "," + name + "_emp";
      out += "," + name + "_cf";
    }
  }
  out += "\n";
  for (const auto& c : curves) {
    out += format_g9(c.snr_db);
    for (const auto& p : c.points) {
      const bool direct = group == ChannelGroup::Direct;
      if (c.has_empirical) {
        out += "," + format_sig9(direct ? p.direct_emp : p.cascade_emp);
      }
      out += "," + format_sig9(direct ? p.direct_cf : p.cascade_cf);
    }
    out += "\n";
  }
  return out;
}

std::string manifest_json(const SystemConfig& cfg, const RunSummary& summary) {
  nlohmann::json config;
  config["m"] = cfg.M;
  config["n"] = cfg.N;
  config["tau_p"] = cfg.tau_p;
  config["snr_db"] = cfg.snr_grid_db;
  config["trials"] = cfg.trials;
  config["seed"] = cfg.master_seed;
  config["pattern"] = std::string(to_string(cfg.pattern));
  std::vector<std::string> est;
  for (auto e : cfg.estimators) est.emplace_back(to_string(e));
  config["estimators"] = est;
  config["beta_bs"] = cfg.losses.beta_bs;
  config["beta_bs_irs"] = cfg.losses.beta_bs_irs;
  config["d_bs"] = cfg.d_bs_over_lambda;
  config["d_irs"] = cfg.d_irs_over_lambda;
  if (!cfg.pilots.empty()) config["pilots"] = to_settings(cfg).at("pilots");
  config["resample_angles"] = cfg.resample_angles;

  nlohmann::json doc;
  doc["version"] = kVersion;
  doc["config"] = config;
  doc["derived"] = {{"beta_irs", cfg.losses.beta_irs}};
  doc["duration_s"] = summary.duration_s;
  std::vector<std::string> outputs;
  for (const auto& p : summary.outputs) outputs.push_back(p.string());
  doc["outputs"] = outputs;
  return doc.dump(2) + "\n";
}

RunSummary run_sweep_to_disk(const SystemConfig& cfg, const RunOptions& opts) {
  std::error_code ec;
  std::filesystem::create_directories(opts.out_dir, ec);
  if (ec) {
    throw IoError("cannot create output directory '" + opts.out_dir.string() +
                  "': " + ec.message());
  }
  const auto start = std::chrono::steady_clock::now();
  RunSummary summary;
  summary.curves = opts.closed_form_only ? closed_form_curves(cfg)
                                         : monte_carlo_sweep(cfg, opts.threads);

  const auto direct = opts.out_dir / "nmse_direct.csv";
  const auto cascade = opts.out_dir / "nmse_cascade.csv";
  write_file(direct, nmse_csv(summary.curves, ChannelGroup::Direct));
  write_file(cascade, nmse_csv(summary.curves, ChannelGroup::Cascade));
  summary.outputs = {direct, cascade};
  summary.duration_s = std::chrono::duration<double>(
                           std::chrono::steady_clock::now() - start).count();
  const auto manifest = opts.out_dir / "manifest.json";
  summary.outputs.push_back(manifest);
  write_file(manifest, manifest_json(cfg, summary));
  return summary;
}

}  // namespace risce

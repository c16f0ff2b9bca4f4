#include "risce/config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace risce {
namespace {

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys{
      "m",      "n",       "tau_p",       "snr",  "snr_db", "trials",
      "seed",   "pattern", "estimators",  "beta_bs", "beta_bs_irs",
      "d_bs",   "d_irs",   "pilots",      "resample_angles"};
  return keys;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n\"'");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n\"'");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string canonical_key(std::string key) {
  for (auto& c : key) {
    if (c == '-') c = '_';
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return key;
}

double to_double(const std::string& key, const std::string& v) {
  double out = 0.0;
  const char* end = v.data() + v.size();
  auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || ptr != end || !std::isfinite(out)) {
    throw ConfigError(key + ": expected a number, got '" + v + "'");
  }
  return out;
}

long long to_int(const std::string& key, const std::string& v) {
  long long out = 0;
  const char* end = v.data() + v.size();
  auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError(key + ": expected an integer, got '" + v + "'");
  }
  return out;
}

int to_dim(const std::string& key, const std::string& v) {
  const long long x = to_int(key, v);
  if (x < 0 || x > std::numeric_limits<int>::max()) {
    throw ConfigError(key + ": must be a non-negative integer, got '" + v + "'");
  }
  return static_cast<int>(x);
}

bool to_bool(const std::string& key, std::string v) {
  for (auto& c : v) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError(key + ": expected true or false, got '" + v + "'");
}

std::string exact(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// Pilots are "re:im" pairs separated by commas.
std::vector<Complex> to_pilots(const std::string& key, const std::string& v) {
  std::vector<Complex> out;
  for (const auto& item : split(v, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) {
      out.emplace_back(to_double(key, item), 0.0);
    } else {
      out.emplace_back(to_double(key, trim(item.substr(0, colon))),
                       to_double(key, trim(item.substr(colon + 1))));
    }
  }
  return out;
}

}  // namespace

std::vector<double> parse_snr_range(const std::string& spec) {
  const auto parts = split(spec, ':');
  if (parts.size() != 3) {
    throw ConfigError("snr: expected min:step:max, got '" + spec + "'");
  }
  const double lo = to_double("snr", parts[0]);
  const double step = to_double("snr", parts[1]);
  const double hi = to_double("snr", parts[2]);
  if (!(step > 0.0) || hi < lo) {
    throw ConfigError("snr: need step > 0 and max >= min in '" + spec + "'");
  }
  const auto count = static_cast<long long>(std::floor((hi - lo) / step + 1e-9)) + 1;
  if (count > 100000) throw ConfigError("snr: grid too large");
  std::vector<double> grid;
  for (long long i = 0; i < count; ++i) grid.push_back(lo + static_cast<double>(i) * step);
  return grid;
}

Settings parse_flat_settings(const std::string& text) {
  Settings out;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": expected key = value");
    }
    out[canonical_key(trim(line.substr(0, eq)))] = trim(line.substr(eq + 1));
  }
  return out;
}

Settings parse_manifest_settings(const std::string& json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("manifest: ") + e.what());
  }
  const auto& cfg = doc.contains("config") ? doc.at("config") : doc;
  if (!cfg.is_object()) throw ConfigError("manifest: config must be an object");
  Settings out;
  for (const auto& [key, value] : cfg.items()) {
    if (value.is_string()) {
      out[key] = value.get<std::string>();
    } else if (value.is_array()) {
      std::string joined;
      for (const auto& v : value) {
        if (!joined.empty()) joined += ",";
        joined += v.is_string() ? v.get<std::string>() : v.dump();
      }
      out[key] = joined;
    } else {
      out[key] = value.dump();
    }
  }
  return out;
}

Settings read_settings_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    return parse_manifest_settings(text);
  }
  return parse_flat_settings(text);
}

SystemConfig parse_config(const Settings& file, const Settings& overrides) {
  Settings merged;
  for (const auto& [k, v] : file) merged[canonical_key(k)] = v;
  for (const auto& [k, v] : overrides) merged[canonical_key(k)] = v;
  for (const auto& [k, v] : merged) {
    if (!known_keys().contains(k)) throw ConfigError("unknown key '" + k + "'");
  }
  if (merged.contains("snr") && merged.contains("snr_db")) {
    // A flag-level range beats a list from a file, and vice versa.
    if (overrides.contains("snr")) merged.erase("snr_db");
    else merged.erase("snr");
  }

  SystemConfig cfg;
  double beta_bs = 0.5;
  double beta_bs_irs = 1.0;
  bool explicit_estimators = false;
  for (const auto& [key, v] : merged) {
    if (key == "m") cfg.M = to_dim(key, v);
    else if (key == "n") cfg.N = to_dim(key, v);
    else if (key == "tau_p") cfg.tau_p = to_dim(key, v);
    else if (key == "snr") cfg.snr_grid_db = parse_snr_range(v);
    else if (key == "snr_db") {
      cfg.snr_grid_db.clear();
      for (const auto& s : split(v, ',')) cfg.snr_grid_db.push_back(to_double(key, s));
    } else if (key == "trials") {
      const long long t = to_int(key, v);
      if (t < 1 || t > std::numeric_limits<int>::max()) {
        throw ConfigError("trials: must be a positive integer, got '" + v + "'");
      }
      cfg.trials = static_cast<int>(t);
    } else if (key == "seed") {
      std::uint64_t seed = 0;
      auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), seed);
      if (ec != std::errc() || ptr != v.data() + v.size()) {
        throw ConfigError("seed: expected an unsigned 64-bit integer, got '" + v + "'");
      }
      cfg.master_seed = seed;
    } else if (key == "pattern") {
      try {
        cfg.pattern = parse_pattern_kind(v);
      } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("pattern: ") + e.what());
      }
    } else if (key == "estimators") {
      explicit_estimators = true;
      cfg.estimators.clear();
      try {
        for (const auto& name : split(v, ',')) {
          cfg.estimators.push_back(parse_estimator(name));
        }
      } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("estimators: ") + e.what());
      }
    } else if (key == "beta_bs") beta_bs = to_double(key, v);
    else if (key == "beta_bs_irs") beta_bs_irs = to_double(key, v);
    else if (key == "d_bs") cfg.d_bs_over_lambda = to_double(key, v);
    else if (key == "d_irs") cfg.d_irs_over_lambda = to_double(key, v);
    else if (key == "pilots") cfg.pilots = to_pilots(key, v);
    else if (key == "resample_angles") cfg.resample_angles = to_bool(key, v);
  }

  if (!explicit_estimators && cfg.pattern == PatternKind::OnOff) {
    cfg.estimators = {EstimatorKind::MvuOnOff};
  }
  if (!(beta_bs > 0.0 && beta_bs < 1.0)) {
    throw ConfigError("beta_bs: must lie strictly between 0 and 1");
  }
  if (!(beta_bs_irs > 0.0)) throw ConfigError("beta_bs_irs: must be positive");
  if (cfg.N < 1) throw ConfigError("n: must be >= 1");
  cfg.losses = PathLosses::normalized(cfg.N, beta_bs, beta_bs_irs);

  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return cfg;
}

SystemConfig parse_config(const std::optional<std::string>& path,
                          const Settings& overrides) {
  return parse_config(path ? read_settings_file(*path) : Settings{}, overrides);
}

Settings to_settings(const SystemConfig& cfg) {
  Settings s;
  s["m"] = std::to_string(cfg.M);
  s["n"] = std::to_string(cfg.N);
  s["tau_p"] = std::to_string(cfg.tau_p);
  std::string grid;
  for (double x : cfg.snr_grid_db) grid += (grid.empty() ? "" : ",") + exact(x);
  s["snr_db"] = grid;
  s["trials"] = std::to_string(cfg.trials);
  s["seed"] = std::to_string(cfg.master_seed);
  s["pattern"] = std::string(to_string(cfg.pattern));
  std::string est;
  for (auto e : cfg.estimators) est += (est.empty() ? "" : ",") + std::string(to_string(e));
  s["estimators"] = est;
  s["beta_bs"] = exact(cfg.losses.beta_bs);
  s["beta_bs_irs"] = exact(cfg.losses.beta_bs_irs);
  s["d_bs"] = exact(cfg.d_bs_over_lambda);
  s["d_irs"] = exact(cfg.d_irs_over_lambda);
  if (!cfg.pilots.empty()) {
    std::string p;
    for (const auto& x : cfg.pilots) {
      p += (p.empty() ? "" : ",") + exact(x.real()) + ":" + exact(x.imag());
    }
    s["pilots"] = p;
  }
  s["resample_angles"] = cfg.resample_angles ? "true" : "false";
  return s;
}

}  // namespace risce

#pragma once

// Configuration ingestion and machine-readable output (CSV / JSON).
// Numbers are written with 17 significant digits so every double round-trips.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "qes/core_model.hpp"
#include "qes/errors.hpp"
#include "qes/heun_series.hpp"
#include "qes/oracle.hpp"
#include "qes/spectrum.hpp"
#include "qes/wavefunction.hpp"

namespace qes::io {

using nlohmann::json;

inline constexpr const char* kToolName = "qes";
inline constexpr const char* kToolVersion = "0.1.0";

inline std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// --- configuration ---------------------------------------------------------

inline PhysicalConfig config_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("config: top level must be a JSON object");
  static const char* const required[] = {"M", "alpha", "chi", "B0", "Omega", "D", "a"};
  static const char* const optional_keys[] = {"m_effective", "mu", "tau2"};

  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (const char* k : required) known = known || key == k;
    for (const char* k : optional_keys) known = known || key == k;
    if (!known) throw ConfigError("config: unknown field '" + key + "'");
    if (!value.is_number()) throw ConfigError("config: field '" + key + "' must be a number");
  }
  auto get = [&](const char* key) -> double {
    if (!j.contains(key)) throw ConfigError(std::string("config: missing field '") + key + "'");
    return j.at(key).get<double>();
  };
  auto get_opt = [&](const char* key) -> std::optional<double> {
    if (!j.contains(key)) return std::nullopt;
    return j.at(key).get<double>();
  };

  PhysicalConfig c;
  c.M = get("M");
  c.alpha = get("alpha");
  c.chi = get("chi");
  c.B0 = get("B0");
  c.Omega = get("Omega");
  c.D = get("D");
  c.a = get("a");
  c.m_effective = get_opt("m_effective");
  c.mu_override = get_opt("mu");
  c.tau2_override = get_opt("tau2");
  try {
    c.validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return c;
}

inline json config_to_json(const PhysicalConfig& c) {
  json j = {{"M", c.M},         {"alpha", c.alpha}, {"chi", c.chi}, {"B0", c.B0},
            {"Omega", c.Omega}, {"D", c.D},         {"a", c.a}};
  if (c.m_effective) j["m_effective"] = *c.m_effective;
  if (c.mu_override) j["mu"] = *c.mu_override;
  if (c.tau2_override) j["tau2"] = *c.tau2_override;
  return j;
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config: '" + path + "' is not valid JSON: " + e.what());
  }
}

/// 64-bit FNV-1a over the canonical (key-sorted, compact) serialization.
inline std::string config_digest(const json& config) {
  const std::string canonical = config.dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : canonical) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

// --- manifest --------------------------------------------------------------

struct RunManifest {
  std::string command;
  std::string config_digest;
  std::optional<int> n_min, n_max, l_min, l_max;
  std::string branch;
  std::string format = "csv";
  json extra = json::object();

  json to_json() const {
    json j = {{"tool", kToolName}, {"version", kToolVersion}, {"command", command},
              {"format", format}};
    if (!config_digest.empty()) j["config_digest"] = config_digest;
    if (n_min) j["n_min"] = *n_min;
    if (n_max) j["n_max"] = *n_max;
    if (l_min) j["l_min"] = *l_min;
    if (l_max) j["l_max"] = *l_max;
    if (!branch.empty()) j["branch"] = branch;
    for (const auto& [k, v] : extra.items()) j[k] = v;
    return j;
  }

  std::string csv_header() const { return "# manifest " + to_json().dump() + "\n"; }
};

// --- spectrum --------------------------------------------------------------

inline json to_json(const SpectrumLine& line) {
  return {{"n", line.n},
          {"l", line.l},
          {"branch", std::string(to_string(line.branch))},
          {"root_index", line.root_index},
          {"gamma", line.gamma},
          {"theta", line.theta_root},
          {"varpi", line.varpi},
          {"omega", line.omega},
          {"energy", line.E},
          {"terminated", line.terminated}};
}

inline constexpr const char* kSpectrumColumns = "n,l,branch,theta,varpi,omega,energy,terminated";

inline std::string csv_row(const SpectrumLine& line) {
  std::ostringstream os;
  os << line.n << ',' << line.l << ',' << to_string(line.branch) << ','
     << format_number(line.theta_root) << ',' << format_number(line.varpi) << ','
     << format_number(line.omega) << ',' << format_number(line.E) << ','
     << (line.terminated ? "true" : "false");
  return os.str();
}

inline std::string csv_absent_row(const ChannelKey& key) {
  return std::to_string(key.n) + "," + std::to_string(key.l) + ",absent,,,,,";
}

// --- wavefunction ----------------------------------------------------------

inline json to_json(const ChannelParams& ch) {
  return {{"m", ch.m},         {"omega", ch.omega}, {"Omega", ch.Omega}, {"l", ch.l},
          {"gamma", ch.gamma}, {"mu", ch.mu},       {"tau2", ch.tau2},   {"varpi", ch.varpi},
          {"theta", ch.theta}, {"k", 0}};
}

// --- coefficients ----------------------------------------------------------

inline std::string csv_row(int k, double a_k) {
  return std::to_string(k) + "," + format_number(a_k);
}

// --- oracle ----------------------------------------------------------------

inline json to_json(const RadialGrid& g) {
  return {{"r_max", g.r_max}, {"N", g.N}, {"h", g.spacing()}};
}

inline json to_json(const OracleReport& r) {
  return {{"n", r.n},
          {"l", r.l},
          {"gamma", r.gamma},
          {"theta", r.theta},
          {"lambda_analytic", r.lambda_analytic},
          {"lambda_numeric", r.lambda_numeric},
          {"abs_gap", r.abs_gap},
          {"base_lambda_numeric", r.base_lambda_numeric},
          {"base_gap", r.base_gap},
          {"gap_ratio", r.gap_ratio},
          {"eigen_index", r.eigen_index},
          {"node_count_numeric", r.node_count_numeric},
          {"node_count_analytic", r.node_count_analytic},
          {"overlap", r.overlap},
          {"grid", to_json(r.grid)},
          {"refined", r.refined},
          {"small_gamma", r.small_gamma},
          {"omega_overridden", r.omega_overridden},
          {"status", std::string(to_string(r.status))},
          {"passed", r.passed()}};
}

inline constexpr const char* kVerifyColumns = "n,l,lambda_analytic,lambda_numeric,gap,nodes,passed";

inline std::string csv_row(const OracleReport& r) {
  std::ostringstream os;
  os << r.n << ',' << r.l << ',' << format_number(r.lambda_analytic) << ','
     << format_number(r.lambda_numeric) << ',' << format_number(r.abs_gap) << ','
     << r.node_count_numeric << ',' << (r.passed() ? "true" : "false");
  return os.str();
}

}  // namespace qes::io

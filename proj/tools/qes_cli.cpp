// qes: quasi-exact spectra for a polarizable neutral particle in crossed
// fields with a Kratzer potential in a rotating frame.
//
// Exit codes: 0 success, 1 usage or configuration error, 2 verification failure.

#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qes/io.hpp"
#include "qes/qes.hpp"

namespace {

using qes::io::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitVerifyFailed = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Range {
  int lo = 0;
  int hi = 0;
};

void check_ranges(const Range& n, const Range& l) {
  if (n.lo < 1) throw UsageError("--n-min must be >= 1");
  if (n.hi < n.lo) throw UsageError("empty n range");
  if (l.hi < l.lo) throw UsageError("empty l range");
}

qes::BranchSelection parse_selection(const std::string& s) {
  if (s == "plus") return qes::BranchSelection::plus;
  if (s == "minus") return qes::BranchSelection::minus;
  return qes::BranchSelection::both;
}

qes::Branch parse_branch(const std::string& s) {
  if (s == "both") throw UsageError("--branch both is not valid for this command");
  return s == "minus" ? qes::Branch::minus : qes::Branch::plus;
}

struct LoadedConfig {
  qes::PhysicalConfig config;
  std::string digest;
};

LoadedConfig load_config(const std::string& path) {
  const json j = qes::io::read_json_file(path);
  return {qes::io::config_from_json(j), qes::io::config_digest(j)};
}

int cmd_spectrum(const std::string& config_path, Range n, Range l, const std::string& branch,
                 const std::string& format) {
  check_ranges(n, l);
  const auto cfg = load_config(config_path);
  std::vector<qes::ChannelKey> empty;
  const auto lines =
      qes::spectrum_sweep(n.lo, n.hi, l.lo, l.hi, cfg.config, parse_selection(branch), &empty);
  for (const auto& e : empty) std::cerr << "qes: " << e.reason << "\n";

  // merge lines and absent channels in (n, l) order
  std::map<std::pair<int, int>, std::vector<const qes::SpectrumLine*>> by_channel;
  for (const auto& line : lines) by_channel[{line.n, line.l}].push_back(&line);
  std::map<std::pair<int, int>, const qes::ChannelKey*> missing;
  for (const auto& e : empty) missing[{e.n, e.l}] = &e;

  qes::io::RunManifest manifest{"spectrum", cfg.digest, n.lo, n.hi, l.lo, l.hi, branch, format};
  if (format == "json") {
    json rows = json::array();
    for (int nn = n.lo; nn <= n.hi; ++nn)
      for (int ll = l.lo; ll <= l.hi; ++ll) {
        if (auto it = missing.find({nn, ll}); it != missing.end()) {
          rows.push_back({{"n", nn}, {"l", ll}, {"absent", true}, {"reason", it->second->reason}});
          continue;
        }
        for (const auto* line : by_channel[{nn, ll}]) rows.push_back(qes::io::to_json(*line));
      }
    std::cout << json{{"manifest", manifest.to_json()}, {"rows", rows}}.dump(2) << "\n";
  } else {
    std::cout << manifest.csv_header() << qes::io::kSpectrumColumns << "\n";
    for (int nn = n.lo; nn <= n.hi; ++nn)
      for (int ll = l.lo; ll <= l.hi; ++ll) {
        if (auto it = missing.find({nn, ll}); it != missing.end()) {
          std::cout << qes::io::csv_absent_row(*it->second) << "\n";
          continue;
        }
        for (const auto* line : by_channel[{nn, ll}]) std::cout << qes::io::csv_row(*line) << "\n";
      }
  }
  return kExitOk;
}

int cmd_wavefunction(const std::string& config_path, int n, int l, int samples, double r_max,
                     const std::string& branch, int root_index, const std::string& format) {
  if (n < 1) throw UsageError("--n must be >= 1");
  if (samples < 1) throw UsageError("--samples must be >= 1");
  if (!(r_max > 0.0)) throw UsageError("--r-max must be positive");
  const auto cfg = load_config(config_path);
  const qes::Branch b = parse_branch(branch);
  const auto lines = qes::allowed_frequencies(
      n, l, cfg.config, b == qes::Branch::plus ? qes::BranchSelection::plus : qes::BranchSelection::minus);
  if (root_index < 0 || static_cast<std::size_t>(root_index) >= lines.size())
    throw UsageError("--root-index out of range (" + std::to_string(lines.size()) + " roots)");
  const auto& line = lines[static_cast<std::size_t>(root_index)];
  const auto rf = qes::radial_wavefunction(line, cfg.config);
  const auto pts = qes::sample(rf, r_max, samples);
  const auto ch = line.channel(cfg.config);

  qes::io::RunManifest manifest{"wavefunction", cfg.digest, n, n, l, l, branch, format};
  manifest.extra = {{"root_index", root_index},
                    {"samples", samples},
                    {"r_max", r_max},
                    {"r_convention", "r = sqrt(m*varpi)*rho"}};
  if (format == "json") {
    json rows = json::array();
    for (const auto& p : pts) rows.push_back({{"r", p.r}, {"f", p.f}});
    json out = {{"manifest", manifest.to_json()},
                {"channel", qes::io::to_json(ch)},
                {"n", n},
                {"energy", line.E},
                {"polynomial", rf.poly.coeffs},
                {"rows", rows}};
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << manifest.csv_header() << "# channel " << qes::io::to_json(ch).dump() << "\n"
              << "r,f\n";
    for (const auto& p : pts)
      std::cout << qes::io::format_number(p.r) << ',' << qes::io::format_number(p.f) << "\n";
  }
  return kExitOk;
}

int cmd_verify(const std::string& config_path, Range n, Range l, int grid_n, double r_max,
               const std::string& branch, int root_index, std::optional<double> omega_override,
               const std::string& format) {
  check_ranges(n, l);
  if (grid_n < 100) throw UsageError("--grid-n must be >= 100");
  if (!(r_max > 0.0)) throw UsageError("--r-max must be positive");
  const auto cfg = load_config(config_path);
  qes::VerifyOptions opts;
  opts.branch = parse_branch(branch);
  opts.root_index = root_index;
  opts.omega_override = omega_override;
  std::vector<qes::ChannelKey> empty;
  const auto reports =
      qes::verify_sweep(n.lo, n.hi, l.lo, l.hi, cfg.config, {r_max, grid_n}, opts, &empty);
  for (const auto& e : empty)
    std::cerr << "qes: n=" << e.n << " l=" << e.l << ": " << e.reason << "\n";

  bool all_passed = !reports.empty();
  for (const auto& r : reports) {
    all_passed = all_passed && r.passed();
    if (r.status == qes::OracleStatus::no_nearby_eigenvalue)
      std::cerr << "qes: n=" << r.n << " l=" << r.l << ": no nearby eigenvalue\n";
    else if (!r.passed())
      std::cerr << "qes: n=" << r.n << " l=" << r.l << ": gap " << r.abs_gap
                << " outside tolerance\n";
  }

  qes::io::RunManifest manifest{"verify", cfg.digest, n.lo, n.hi, l.lo, l.hi, branch, format};
  manifest.extra = {{"grid_n", grid_n}, {"r_max", r_max}, {"root_index", root_index}};
  if (omega_override) manifest.extra["omega_override"] = *omega_override;
  if (format == "json") {
    json rows = json::array();
    for (const auto& r : reports) rows.push_back(qes::io::to_json(r));
    std::cout << json{{"manifest", manifest.to_json()}, {"rows", rows}}.dump(2) << "\n";
  } else {
    std::cout << manifest.csv_header() << qes::io::kVerifyColumns << "\n";
    for (const auto& r : reports) std::cout << qes::io::csv_row(r) << "\n";
  }
  return all_passed ? kExitOk : kExitVerifyFailed;
}

int cmd_coeffs(double gamma, double theta, double nu, int K, const std::string& format) {
  if (K < 1) throw UsageError("--K must be >= 1");
  if (!(1.0 + 2.0 * gamma > 0.0)) throw UsageError("--gamma must satisfy 1 + 2*gamma > 0");
  const auto series = qes::generate_coefficients({gamma, theta, nu}, K);
  qes::io::RunManifest manifest;
  manifest.command = "coeffs";
  manifest.format = format;
  manifest.extra = {{"gamma", gamma}, {"theta", theta}, {"nu", nu}, {"K", K}};
  if (format == "json") {
    json rows = json::array();
    for (int k = 0; k <= K; ++k) rows.push_back({{"k", k}, {"a_k", series[k]}});
    std::cout << json{{"manifest", manifest.to_json()}, {"rows", rows}}.dump(2) << "\n";
  } else {
    std::cout << manifest.csv_header() << "k,a_k\n";
    for (int k = 0; k <= K; ++k) std::cout << qes::io::csv_row(k, series[k]) << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quasi-exact spectra for a Landau-type system with a Kratzer potential in a rotating frame"};
  app.require_subcommand(1);
  app.set_version_flag("--version", qes::io::kToolVersion);

  std::string config_path;
  Range n{1, 1};
  Range l{0, 0};
  std::string branch = "plus";
  std::string format = "csv";
  const std::vector<std::string> branches{"plus", "minus", "both"};
  const std::vector<std::string> formats{"csv", "json"};

  auto add_common = [&](CLI::App* sub, bool ranges) {
    sub->add_option("--config", config_path, "Configuration JSON file")->required();
    if (ranges) {
      sub->add_option("--n-min", n.lo, "Smallest radial quantum number (>= 1)");
      sub->add_option("--n-max", n.hi, "Largest radial quantum number");
      sub->add_option("--l-min", l.lo, "Smallest angular momentum");
      sub->add_option("--l-max", l.hi, "Largest angular momentum");
    }
    sub->add_option("--branch", branch, "Cyclotron-frequency branch")
        ->check(CLI::IsMember(branches));
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember(formats));
  };

  auto* spectrum = app.add_subcommand("spectrum", "Allowed cyclotron frequencies and energies");
  add_common(spectrum, true);

  int wf_n = 1;
  int wf_l = 0;
  int samples = 101;
  double wf_r_max = 8.0;
  int root_index = 0;
  auto* wavefunction = app.add_subcommand("wavefunction", "Sample a radial bound state f(r)");
  add_common(wavefunction, false);
  wavefunction->add_option("--n", wf_n, "Radial quantum number");
  wavefunction->add_option("--l", wf_l, "Angular momentum");
  wavefunction->add_option("--samples", samples, "Number of uniform samples on [0, r_max]");
  wavefunction->add_option("--r-max", wf_r_max, "Sampling range in the dimensionless r");
  wavefunction->add_option("--root-index", root_index, "Which truncation root (ascending)");

  int grid_n = 4000;
  double grid_r_max = 12.0;
  std::optional<double> omega_override;
  auto* verify = app.add_subcommand("verify", "Cross-check levels with a finite-difference solver");
  add_common(verify, true);
  verify->add_option("--grid-n", grid_n, "Interior grid points of the base grid (>= 100)");
  verify->add_option("--r-max", grid_r_max, "Outer Dirichlet radius");
  verify->add_option("--root-index", root_index, "Which truncation root (ascending)");
  verify->add_option("--omega-override", omega_override,
                     "Replace the root's omega (negative control)");

  double gamma = 0.0;
  double theta = 0.0;
  double nu = 0.0;
  int K = 10;
  auto* coeffs = app.add_subcommand("coeffs", "Frobenius coefficients a_0..a_K");
  coeffs->add_option("--gamma", gamma, "gamma (1 + 2 gamma > 0)")->required();
  coeffs->add_option("--theta", theta, "theta")->required();
  coeffs->add_option("--nu", nu, "nu")->required();
  coeffs->add_option("--K", K, "Highest coefficient index (>= 1)");
  coeffs->add_option("--format", format, "Output format")->check(CLI::IsMember(formats));

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*spectrum) return cmd_spectrum(config_path, n, l, branch, format);
    if (*wavefunction)
      return cmd_wavefunction(config_path, wf_n, wf_l, samples, wf_r_max, branch, root_index,
                              format);
    if (*verify)
      return cmd_verify(config_path, n, l, grid_n, grid_r_max, branch, root_index, omega_override,
                        format);
    if (*coeffs) return cmd_coeffs(gamma, theta, nu, K, format);
  } catch (const UsageError& e) {
    std::cerr << "qes: usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const qes::Error& e) {
    std::cerr << "qes: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

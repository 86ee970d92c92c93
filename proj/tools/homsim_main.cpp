// homsim: delay scans, path-amplitude oracle, self-validation and plotting
// for two-photon interference of weak coherent pulse trains.
//
// Exit codes: 0 success, 1 configuration or usage error, 2 validation
// failure, 3 I/O error.

#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "homsim/quantum_oracle.hpp"
#include "homsim/scan_io.hpp"
#include "homsim/scenario.hpp"
#include "homsim/validation.hpp"

namespace {

using namespace homsim;

enum Exit { kOk = 0, kConfigError = 1, kValidationFailure = 2, kIoError = 3 };

struct ScanArgs {
  std::string config_path;
  std::string scenario_name;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> trials;
  std::string out;
  unsigned threads = 1;
};

scenario::ScenarioConfig resolve(const ScanArgs& a) {
  std::optional<scenario::ScenarioName> name;
  if (!a.scenario_name.empty()) name = scenario::parse_scenario_name(a.scenario_name);
  scenario::ScenarioConfig config =
      a.config_path.empty()
          ? scenario::scenario_defaults(name.value_or(scenario::ScenarioName::custom))
          : scenario::from_json(scenario::read_json_file(a.config_path), name);
  if (a.seed) config.seed = *a.seed;
  if (a.trials) config.trials_per_point = *a.trials;
  config.validate();
  return config;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw scenario::IoError("cannot write " + path);
  f << text;
  f.close();
  if (!f) throw scenario::IoError("error writing " + path);
}

int run_scan(const ScanArgs& a) {
  const auto config = resolve(a);
  if (!a.out.empty() && !std::ofstream(a.out, std::ios::binary | std::ios::app)) {
    throw scenario::IoError("cannot write " + a.out);
  }
  const auto settings = config.scan_settings();
  const auto points = sim::run_scan_points(settings, a.threads);
  const auto summary = io::summarize(points, config);

  std::ostringstream csv;
  io::write_csv(csv, points, summary);
  if (a.out.empty()) {
    std::cout << csv.str();
    return kOk;
  }
  write_text_file(a.out, csv.str());
  write_text_file(io::meta_path(a.out), scenario::to_json(config).dump(2) + "\n");
  if (summary) {
    fmt::print(std::cerr, "{}: {} points, V = {:.4f} +- {:.4f}\n", a.out, points.size(),
               summary->visibility, summary->standard_error);
  } else {
    fmt::print(std::cerr, "{}: {} points, no baseline for a visibility estimate\n", a.out,
               points.size());
  }
  return kOk;
}

struct OracleArgs {
  std::string source = "coherent";
  bool incoherent = false;
  double mu = 0.1;
};

int run_oracle(const OracleArgs& a) {
  quantum::SourceModel source;
  if (a.source == "single") {
    source.kind = quantum::SingleHeralded{};
  } else {
    source.kind = quantum::WeakCoherent{a.mu};
  }
  source.within_input_coherent = !a.incoherent;
  try {
    source.validate();
  } catch (const std::invalid_argument& e) {
    throw scenario::ConfigError(e.what());
  }
  const auto paths = quantum::enumerate_paths(source);
  fmt::print("path  amplitude                  |A|^2        class\n");
  for (const auto& p : paths) {
    fmt::print("{:<5} {:+.6f} {:+.6f}i  {:.6e}  {}\n", quantum::to_string(p.label),
               p.amplitude.real(), p.amplitude.imag(), std::norm(p.amplitude),
               p.distinguishability_class);
  }
  fmt::print("baseline P = {:.6e}\nminimum  P = {:.6e}\nV = {:.6f}\n",
             quantum::baseline_probability(paths), quantum::minimum_probability(paths),
             quantum::oracle_visibility(source));
  return kOk;
}

int run_validate(std::uint64_t trials, std::uint64_t seed, unsigned threads) {
  validation::Options options;
  options.trials = trials;
  options.seed = seed;
  options.threads = threads;
  if (trials < 100) throw scenario::ConfigError("validate needs at least 100 trials");
  bool all = true;
  for (const auto& r : validation::run_all(options)) {
    fmt::print("{} {:<30} {}\n", r.passed ? "PASS" : "FAIL", r.name, r.detail);
    all = all && r.passed;
  }
  return all ? kOk : kValidationFailure;
}

int run_plot(const std::string& csv_path, const std::string& out) {
  std::ifstream in(csv_path);
  if (!in) throw scenario::IoError("cannot open " + csv_path);
  const auto scan = io::read_csv(in);
  std::ostringstream svg;
  io::write_plot_svg(svg, scan, csv_path);
  write_text_file(out, svg.str());
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-photon interference of weak coherent pulse trains"};
  app.require_subcommand(1);

  ScanArgs scan_args;
  auto* scan = app.add_subcommand("scan", "Run an optical-delay scan and write CSV");
  scan->add_option("--config", scan_args.config_path, "JSON configuration file");
  scan->add_option("--scenario", scan_args.scenario_name,
                   "mz_synchronized | mz_independent | hom_overlapped | hom_delayed | "
                   "hom_fm_overlapped | hom_fm_delayed | custom");
  scan->add_option("--seed", scan_args.seed, "Random seed");
  scan->add_option("--trials", scan_args.trials, "Trials per scan point");
  scan->add_option("--out", scan_args.out, "Output CSV (stdout if omitted)");
  scan->add_option("--threads", scan_args.threads, "Worker threads")->check(CLI::PositiveNumber);

  OracleArgs oracle_args;
  auto* oracle = app.add_subcommand("oracle", "Print the four-path table and visibility");
  oracle->add_option("--source", oracle_args.source, "single | coherent")
      ->check(CLI::IsMember({"single", "coherent"}));
  auto* coh = oracle->add_flag("--coherent-within-input", "Pulses i and j of an input are coherent");
  oracle->add_flag("--incoherent-within-input", oracle_args.incoherent,
                   "Pulses i and j of an input are mutually incoherent")
      ->excludes(coh);
  oracle->add_option("--mu", oracle_args.mu, "Mean photon number of coherent pulses");

  std::uint64_t validate_trials = 100000;
  std::uint64_t validate_seed = validation::Options{}.seed;
  unsigned validate_threads = 1;
  auto* validate = app.add_subcommand("validate", "Run the invariant suite");
  validate->add_option("--trials", validate_trials, "Trials per Monte Carlo point");
  validate->add_option("--seed", validate_seed, "Random seed");
  validate->add_option("--threads", validate_threads, "Worker threads")
      ->check(CLI::PositiveNumber);

  std::string plot_csv;
  std::string plot_out;
  auto* plot = app.add_subcommand("plot", "Render a scan CSV as SVG");
  plot->add_option("--csv", plot_csv, "Scan CSV")->required();
  plot->add_option("--out", plot_out, "Output SVG")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (*scan) return run_scan(scan_args);
    if (*oracle) return run_oracle(oracle_args);
    if (*validate) return run_validate(validate_trials, validate_seed, validate_threads);
    if (*plot) return run_plot(plot_csv, plot_out);
  } catch (const scenario::ConfigError& e) {
    fmt::print(std::cerr, "config error: {}\n", e.what());
    return kConfigError;
  } catch (const scenario::IoError& e) {
    fmt::print(std::cerr, "I/O error: {}\n", e.what());
    return kIoError;
  } catch (const std::exception& e) {
    fmt::print(std::cerr, "error: {}\n", e.what());
    return kConfigError;
  }
  return kConfigError;
}

#include <algorithm>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "softchar/cli/config.hpp"
#include "softchar/cli/io.hpp"
#include "softchar/cli/pipeline.hpp"
#include "softchar/cli/report.hpp"
#include "softchar/cli/synth.hpp"
#include "softchar/errors.hpp"
#include "softchar/kernels.hpp"

namespace fs = std::filesystem;
using namespace softchar;

namespace {

struct GlobalArgs {
  std::string config_path;
  std::string out_dir = "out";
  std::uint64_t seed = 0;
  bool seed_given = false;
  int jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
};

cli::RunConfig load(const GlobalArgs& args) {
  cli::RunConfig cfg = cli::load_config(args.config_path);
  if (args.seed_given) {
    cfg.seed = args.seed;
    for (auto& spot : cfg.spots)
      if (spot.synth.has_value() && !spot.synth->seed_explicit) spot.synth->seed = args.seed;
  }
  for (const auto& w : cfg.warnings) std::cerr << "warning: " << w << "\n";
  return cfg;
}

int run_synth(const GlobalArgs& args) {
  const cli::RunConfig cfg = load(args);
  fs::create_directories(args.out_dir);
  const std::string provenance =
      "seed=" + std::to_string(cfg.seed) + " config_hash=" + cfg.config_hash;
  std::size_t written = 0;
  for (const auto& spot : cfg.spots) {
    if (!spot.synthetic()) {
      std::cerr << "spot " << spot.id << ": not synthetic, skipped\n";
      continue;
    }
    const auto [force, torque] = cli::synth_experiment(
        spot.synth->true_model, spot.geometry, cfg.motion, spot.synth->noise_rel,
        spot.synth->seed);
    const fs::path fpath = fs::path(args.out_dir) / ("spot" + std::to_string(spot.id) + "_force.csv");
    const fs::path tpath = fs::path(args.out_dir) / ("spot" + std::to_string(spot.id) + "_torque.csv");
    cli::write_curve_csv(fpath.string(), force, cli::kForceHeader, provenance);
    cli::write_curve_csv(tpath.string(), torque, cli::kTorqueHeader, provenance);
    std::cout << "wrote " << fpath.string() << " and " << tpath.string() << "\n";
    written += 2;
  }
  if (written == 0) std::cerr << "no synthetic spots in config\n";
  return 0;
}

int run_sweep(const GlobalArgs& args) {
  const cli::RunConfig cfg = load(args);
  const cli::SweepReport report = cli::run_characterisation(cfg, args.jobs);
  cli::emit_all(report, args.out_dir);
  std::cout << "evaluated " << report.stable_sets << "/" << report.total_sets
            << " stable sets on " << report.spots.size() << " spot(s); outputs in "
            << args.out_dir << "\n";
  return 0;
}

int run_tables(const GlobalArgs& args, const std::string& which) {
  const cli::RunConfig cfg = load(args);
  const cli::SweepReport report = cli::run_characterisation(cfg, args.jobs);
  if (which == "fit")
    std::cout << cli::render_winner_table(report);
  else if (which == "scenarios")
    std::cout << cli::render_nmse_table(report);
  else
    std::cout << cli::render_generalisation(report);
  return 0;
}

int run_report(const GlobalArgs& args) {
  const cli::RunConfig cfg = load(args);
  const cli::SweepReport report = cli::run_characterisation(cfg, args.jobs);
  cli::emit_report(report, cli::ReportFormat::TableText, args.out_dir);
  cli::emit_report(report, cli::ReportFormat::PlotCsv, args.out_dir);
  std::cout << "re-rendered report.txt and plot CSVs in " << args.out_dir << "\n";
  return 0;
}

double json_nmse(const nlohmann::json& j, const char* key) {
  return j.at(key).is_null() ? std::numeric_limits<double>::infinity() : j.at(key).get<double>();
}

int run_replay(const GlobalArgs& args, int spot_id, std::size_t set_index) {
  const cli::RunConfig cfg = load(args);
  const fs::path jsonl = fs::path(args.out_dir) / "results.jsonl";
  std::ifstream in(jsonl);
  if (!in) fail(ErrorKind::DataError, "cannot open " + jsonl.string() + " (run sweep first)");

  nlohmann::json record;
  bool found = false;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    nlohmann::json j = nlohmann::json::parse(line);
    if (j.at("spot").get<int>() == spot_id && j.at("set_index").get<std::size_t>() == set_index) {
      record = std::move(j);
      found = true;
      break;
    }
  }
  if (!found)
    fail(ErrorKind::DataError, "no record for spot " + std::to_string(spot_id) + ", set " +
                                   std::to_string(set_index) + " in " + jsonl.string());

  if (record.at("config_hash").get<std::string>() != cfg.config_hash)
    fail(ErrorKind::ConfigError,
         "results.jsonl was produced with a different config (hash mismatch)");
  if (record.at("seed").get<std::uint64_t>() != cfg.seed)
    fail(ErrorKind::ConfigError, "results.jsonl was produced with a different seed; pass --seed " +
                                     std::to_string(record.at("seed").get<std::uint64_t>()));

  const cli::SweepReport report = cli::run_characterisation(cfg, args.jobs);
  const cli::SpotOutcome* outcome = nullptr;
  for (const auto& s : report.spots)
    if (s.spot_id == spot_id) outcome = &s;
  if (outcome == nullptr)
    fail(ErrorKind::ConfigError, "config has no spot " + std::to_string(spot_id));

  const fitting::FitResult* result = nullptr;
  for (const auto& r : outcome->results)
    if (r.set_index == set_index) result = &r;
  if (result == nullptr)
    fail(ErrorKind::DataError,
         "set " + std::to_string(set_index) + " is not among the stable candidates");

  const double want_f = json_nmse(record, "nmse_force");
  const double want_t = json_nmse(record, "nmse_torque");
  const double want_s = json_nmse(record, "nmse_sum");
  const bool match = std::memcmp(&want_f, &result->nmse_force, sizeof(double)) == 0 &&
                     std::memcmp(&want_t, &result->nmse_torque, sizeof(double)) == 0 &&
                     std::memcmp(&want_s, &result->nmse_sum, sizeof(double)) == 0;
  std::cout << "spot " << spot_id << " set " << set_index << " "
            << constitutive::describe(result->params) << "\n";
  std::cout << "recorded:   force=" << want_f << " torque=" << want_t << " sum=" << want_s << "\n";
  std::cout << "recomputed: force=" << result->nmse_force << " torque=" << result->nmse_torque
            << " sum=" << result->nmse_sum << "\n";
  std::cout << (match ? "replay OK: bit-identical\n" : "replay MISMATCH\n");
  return match ? 0 : 3;
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ConfigError:
    case ErrorKind::UsageError: return 1;
    case ErrorKind::DataError:
    case ErrorKind::IoError: return 2;
    case ErrorKind::InvalidDeformation:
    case ErrorKind::NumericalFailure: return 3;
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"softchar: dual-variable (force + torque) soft material characterisation"};
  app.set_version_flag("--version", std::string("softchar ") + cli::kToolVersion + " (kernels: " +
                                        kernels::active().name + ")");

  GlobalArgs args;
  app.fallthrough();  // global flags may follow the subcommand
  app.add_option("--config", args.config_path, "run configuration file")->type_name("FILE");
  app.add_option("--out-dir", args.out_dir, "output directory (default: out)");
  app.add_option("--jobs", args.jobs, "parallel workers for the sweep")->check(CLI::PositiveNumber);
  auto* seed_opt = app.add_option("--seed", args.seed, "override the config seed");
  app.require_subcommand(1);

  auto* synth = app.add_subcommand("synth", "write synthetic experiment CSVs");
  auto* sweep = app.add_subcommand("sweep", "run the full characterisation and emit all outputs");
  auto* fit = app.add_subcommand("fit", "print per-scenario winning coefficients");
  auto* scenarios = app.add_subcommand("scenarios", "print the per-scenario NMSE table");
  auto* generalize = app.add_subcommand("generalize", "print the cross-spot generalisation");
  auto* report = app.add_subcommand("report", "re-render report.txt and plot CSVs");
  auto* replay = app.add_subcommand("replay", "recompute one recorded set and verify it matches");
  int replay_spot = 0;
  std::size_t replay_set = 0;
  replay->add_option("--spot", replay_spot, "spot id")->required();
  replay->add_option("--set", replay_set, "set index")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  args.seed_given = seed_opt->count() > 0;
  if (args.config_path.empty()) {
    std::cerr << "error: --config is required\n";
    return 1;
  }

  try {
    if (synth->parsed()) return run_synth(args);
    if (sweep->parsed()) return run_sweep(args);
    if (fit->parsed()) return run_tables(args, "fit");
    if (scenarios->parsed()) return run_tables(args, "scenarios");
    if (generalize->parsed()) return run_tables(args, "generalize");
    if (report->parsed()) return run_report(args);
    if (replay->parsed()) return run_replay(args, replay_spot, replay_set);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

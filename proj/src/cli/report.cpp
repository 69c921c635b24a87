#include "softchar/cli/report.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include <json.hpp>

#include "softchar/errors.hpp"

namespace softchar::cli {

namespace fs = std::filesystem;
using constitutive::MaterialModel;
using fitting::FitResult;
using fitting::FitScenario;

namespace {

std::string num(double v, const char* spec = "%.6g") {
  char buf[48];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

std::string full(double v) { return num(v, "%.17g"); }

std::string provenance_line(const SweepReport& report) {
  return "seed=" + std::to_string(report.config.seed) + " config_hash=" +
         report.config.config_hash + " version=" + report.tool_version;
}

const FitResult* winner_of(const SpotOutcome& spot, FitScenario scenario) {
  for (const auto& w : spot.winners)
    if (w.scenario == scenario) return &w.result;
  return nullptr;
}

// Scenario column value, following the published convention: the sum for
// scenario I, the single-variable NMSE for II and III.
double scenario_value(const FitResult& r, FitScenario scenario) {
  switch (scenario) {
    case FitScenario::SumBoth: return r.nmse_sum;
    case FitScenario::TorqueOnly: return r.nmse_torque;
    case FitScenario::ForceOnly: return r.nmse_force;
  }
  return r.nmse_sum;
}

nlohmann::json params_json(const MaterialModel& model) {
  nlohmann::json out;
  const auto names = constitutive::parameter_names(constitutive::family(model));
  const auto values = constitutive::parameter_values(model);
  for (std::size_t i = 0; i < names.size(); ++i) out[names[i]] = values[i];
  return out;
}

}  // namespace

std::string render_winner_table(const SweepReport& report) {
  std::ostringstream out;
  const auto fam = report.config.model_family;
  const auto names = constitutive::parameter_names(fam);

  out << "Set of coefficients per scenario (" << constitutive::family_name(fam) << ")\n";
  out << "Loc.";
  for (const auto& scenario : report.config.scenarios) {
    out << " |";
    for (const auto* name : names)
      out << " " << fitting::scenario_label(scenario) << ":" << name;
  }
  out << "\n";
  for (const auto& spot : report.spots) {
    out << spot.spot_id;
    for (const auto& scenario : report.config.scenarios) {
      const FitResult* w = winner_of(spot, scenario);
      out << " |";
      if (w != nullptr) {
        const auto values = constitutive::parameter_values(w->params);
        for (std::size_t i = 0; i < names.size(); ++i) out << " " << num(values[i]);
      }
    }
    out << "\n";
  }
  return out.str();
}

std::string render_nmse_table(const SweepReport& report) {
  std::ostringstream out;
  out << "NMSE per scenario and point (" << constitutive::family_name(report.config.model_family)
      << ")\n";
  out << "Loc.";
  for (const auto& scenario : report.config.scenarios)
    out << "\t" << fitting::scenario_label(scenario);
  out << "\n";

  std::vector<double> sums(report.config.scenarios.size(), 0.0);
  for (const auto& spot : report.spots) {
    out << spot.spot_id;
    for (std::size_t s = 0; s < report.config.scenarios.size(); ++s) {
      const FitResult* w = winner_of(spot, report.config.scenarios[s]);
      const double v = w != nullptr ? scenario_value(*w, report.config.scenarios[s])
                                    : std::numeric_limits<double>::quiet_NaN();
      sums[s] += v;
      out << "\t" << num(v);
    }
    out << "\n";
  }
  if (!report.spots.empty() && !report.config.scenarios.empty()) {
    out << "mean";
    for (double s : sums) out << "\t" << num(s / static_cast<double>(report.spots.size()));
    out << "\n";
  }
  return out.str();
}

std::string render_generalisation(const SweepReport& report) {
  std::ostringstream out;
  out << "Generalisation across spots (lowest mean NMSE)\n";
  if (!report.generalisation.has_value()) {
    out << "(not computed)\n";
    return out.str();
  }
  const auto& g = *report.generalisation;
  out << "set_index: " << g.set_index << "\n";
  out << "params: " << constitutive::describe(g.params) << "\n";
  out << "mean_nmse: " << num(g.mean_nmse) << " +/- " << num(g.std_nmse) << "\n";
  out << "per_point:";
  for (double v : g.per_point_nmse) out << " " << num(v);
  out << "\n";
  return out.str();
}

std::string render_tables(const SweepReport& report) {
  std::ostringstream out;
  out << "softchar characterisation report\n";
  out << provenance_line(report) << "\n";
  out << "model: " << constitutive::family_name(report.config.model_family) << ", sampled sets: "
      << report.total_sets << ", Drucker-stable: " << report.stable_sets << "\n\n";
  out << render_winner_table(report) << "\n";
  out << render_nmse_table(report) << "\n";
  out << render_generalisation(report);
  if (!report.notes.empty()) {
    out << "\nnotes:\n";
    for (const auto& n : report.notes) out << "  - " << n << "\n";
  }
  return out.str();
}

namespace {

void write_text_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) fail(ErrorKind::IoError, "cannot write " + path.string());
  out << content;
  if (!out) fail(ErrorKind::IoError, "write failed for " + path.string());
}

void emit_jsonl(const SweepReport& report, const fs::path& dir) {
  std::ofstream out(dir / "results.jsonl");
  if (!out) fail(ErrorKind::IoError, "cannot write results.jsonl");
  for (const auto& spot : report.spots) {
    for (const auto& r : spot.results) {
      nlohmann::json j;
      j["spot"] = spot.spot_id;
      j["set_index"] = r.set_index;
      j["family"] = constitutive::family_name(r.params);
      j["params"] = params_json(r.params);
      // non-finite doubles serialise to null; readers map null back to inf
      j["nmse_force"] = r.nmse_force;
      j["nmse_torque"] = r.nmse_torque;
      j["nmse_sum"] = r.nmse_sum;
      j["status"] = r.ok() ? "ok" : r.status;
      j["seed"] = report.config.seed;
      j["config_hash"] = report.config.config_hash;
      j["version"] = report.tool_version;
      out << j.dump() << "\n";
    }
  }
  if (!out) fail(ErrorKind::IoError, "write failed for results.jsonl");
}

void emit_coeffspace(const SweepReport& report, const fs::path& dir) {
  const auto fam = report.config.model_family;
  const auto names = constitutive::parameter_names(fam);
  for (const auto& spot : report.spots) {
    const fs::path path = dir / ("coeffspace_" + constitutive::family_name(fam) + "_" +
                                 std::to_string(spot.spot_id) + ".csv");
    std::ofstream out(path);
    if (!out) fail(ErrorKind::IoError, "cannot write " + path.string());
    out << "# " << provenance_line(report) << "\n";
    for (const auto* name : names) out << name << ",";
    out << "nmse_force,nmse_torque,nmse_sum,set_index,status\n";
    for (const auto& r : spot.results) {
      const auto values = constitutive::parameter_values(r.params);
      for (std::size_t i = 0; i < names.size(); ++i) out << full(values[i]) << ",";
      out << full(r.nmse_force) << "," << full(r.nmse_torque) << "," << full(r.nmse_sum) << ","
          << r.set_index << "," << (r.ok() ? "ok" : "failed") << "\n";
    }
    if (!out) fail(ErrorKind::IoError, "write failed for " + path.string());
  }
}

void emit_curves(const SweepReport& report, const fs::path& dir) {
  for (const auto& spot : report.spots) {
    const fs::path path = dir / ("curves_" + std::to_string(spot.spot_id) + ".csv");
    std::ofstream out(path);
    if (!out) fail(ErrorKind::IoError, "cannot write " + path.string());
    out << "# " << provenance_line(report) << "\n";
    out << "kind,abscissa,exp,sim_I,sim_II,sim_III\n";

    // winner curves resampled onto the experimental abscissae
    std::map<FitScenario, forward::SimCurves> sims;
    for (const auto& w : spot.winners) {
      if (!w.result.ok()) continue;
      sims[w.scenario] = forward::simulate(w.result.params, spot.geometry, report.config.motion);
    }

    auto emit_kind = [&](const char* kind, const fitting::Curve& exp,
                         bool torque) {
      std::map<FitScenario, fitting::Curve> resampled;
      for (const auto& [scenario, sim] : sims)
        resampled[scenario] =
            fitting::resample(torque ? sim.torque_curve : sim.force_curve, exp.x);
      for (std::size_t i = 0; i < exp.size(); ++i) {
        out << kind << "," << full(exp.x[i]) << "," << full(exp.y[i]);
        for (FitScenario scenario : fitting::kAllScenarios) {
          out << ",";
          auto it = resampled.find(scenario);
          if (it != resampled.end()) out << full(it->second.y[i]);
        }
        out << "\n";
      }
    };
    emit_kind("force", spot.exp_force, false);
    emit_kind("torque", spot.exp_torque, true);
    if (!out) fail(ErrorKind::IoError, "write failed for " + path.string());
  }
}

}  // namespace

void emit_report(const SweepReport& report, ReportFormat format, const std::string& out_dir) {
  const fs::path dir(out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) fail(ErrorKind::IoError, "cannot create output directory " + out_dir);

  switch (format) {
    case ReportFormat::TableText: write_text_file(dir / "report.txt", render_tables(report)); return;
    case ReportFormat::JsonLines: emit_jsonl(report, dir); return;
    case ReportFormat::PlotCsv:
      emit_coeffspace(report, dir);
      emit_curves(report, dir);
      return;
  }
}

void emit_all(const SweepReport& report, const std::string& out_dir) {
  emit_report(report, ReportFormat::TableText, out_dir);
  emit_report(report, ReportFormat::JsonLines, out_dir);
  emit_report(report, ReportFormat::PlotCsv, out_dir);
}

}  // namespace softchar::cli

#pragma once

#include <string>

#include "softchar/cli/pipeline.hpp"

namespace softchar::cli {

enum class ReportFormat { TableText, JsonLines, PlotCsv };

/// Writes the report files for one format into out_dir:
///   TableText -> report.txt
///   JsonLines -> results.jsonl (one record per spot x evaluated set)
///   PlotCsv   -> coeffspace_<family>_<spot>.csv and curves_<spot>.csv
/// Every file embeds seed and config hash.
void emit_report(const SweepReport& report, ReportFormat format, const std::string& out_dir);

void emit_all(const SweepReport& report, const std::string& out_dir);

/// The table-text rendering (also used for stdout commands).
std::string render_tables(const SweepReport& report);
std::string render_winner_table(const SweepReport& report);
std::string render_nmse_table(const SweepReport& report);
std::string render_generalisation(const SweepReport& report);

}  // namespace softchar::cli

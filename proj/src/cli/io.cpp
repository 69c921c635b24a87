#include "softchar/cli/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <vector>

#include "softchar/errors.hpp"

namespace softchar::cli {

namespace {

bool parse_cell(const std::string& cell, double* out) {
  if (cell.empty()) return false;
  char* end = nullptr;
  *out = std::strtod(cell.c_str(), &end);
  return end == cell.c_str() + cell.size();
}

std::string trim_cr(std::string s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == '\n')) s.pop_back();
  return s;
}

}  // namespace

fitting::Curve read_curve_csv(const std::string& path, const std::string& expected_header,
                              IngestInfo* info) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::DataError, "cannot open " + path);

  std::string line;
  std::size_t row = 0;
  bool header_seen = false;
  std::vector<double> xs, ys;

  while (std::getline(in, line)) {
    ++row;
    line = trim_cr(line);
    if (line.empty()) continue;
    if (line.front() == '#') continue;  // provenance comments
    if (!header_seen) {
      if (line != expected_header)
        fail(ErrorKind::DataError, path + ": row " + std::to_string(row) +
                                       ": expected header '" + expected_header + "', got '" +
                                       line + "'");
      header_seen = true;
      continue;
    }
    const std::size_t comma = line.find(',');
    if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos)
      fail(ErrorKind::DataError,
           path + ": row " + std::to_string(row) + ": expected exactly two columns");
    double x = 0.0, y = 0.0;
    if (!parse_cell(line.substr(0, comma), &x))
      fail(ErrorKind::DataError,
           path + ": row " + std::to_string(row) + ", column 1: not a number");
    if (!parse_cell(line.substr(comma + 1), &y))
      fail(ErrorKind::DataError,
           path + ": row " + std::to_string(row) + ", column 2: not a number");
    xs.push_back(x);
    ys.push_back(y);
  }
  if (!header_seen) fail(ErrorKind::DataError, path + ": missing header row");
  if (xs.size() < 2) fail(ErrorKind::DataError, path + ": needs at least 2 data rows");

  // collapse consecutive duplicate abscissae by averaging
  std::vector<double> cx, cy;
  std::size_t collapsed = 0;
  std::size_t i = 0;
  while (i < xs.size()) {
    std::size_t j = i + 1;
    double sum = ys[i];
    while (j < xs.size() && xs[j] == xs[i]) {
      sum += ys[j];
      ++j;
    }
    cx.push_back(xs[i]);
    cy.push_back(sum / static_cast<double>(j - i));
    collapsed += j - i - 1;
    i = j;
  }
  if (info != nullptr) info->duplicates_collapsed = collapsed;

  fitting::Curve curve{std::move(cx), std::move(cy)};
  try {
    curve.validate();
  } catch (const Error& e) {
    fail(ErrorKind::DataError, path + ": " + e.what());
  }
  return curve;
}

std::pair<fitting::Curve, fitting::Curve> ingest_curves(const std::string& force_csv,
                                                        const std::string& torque_csv,
                                                        IngestInfo* force_info,
                                                        IngestInfo* torque_info) {
  return {read_curve_csv(force_csv, kForceHeader, force_info),
          read_curve_csv(torque_csv, kTorqueHeader, torque_info)};
}

void write_curve_csv(const std::string& path, const fitting::Curve& curve,
                     const std::string& header, const std::string& provenance) {
  curve.validate();
  std::ofstream out(path);
  if (!out) fail(ErrorKind::IoError, "cannot write " + path);
  if (!provenance.empty()) out << "# " << provenance << "\n";
  out << header << "\n";
  char buf[64];
  for (std::size_t i = 0; i < curve.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g", curve.x[i], curve.y[i]);
    out << buf << "\n";
  }
  if (!out) fail(ErrorKind::IoError, "write failed for " + path);
}

}  // namespace softchar::cli

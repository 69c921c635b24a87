#include <doctest.h>
#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "softchar/cli/config.hpp"
#include "softchar/cli/io.hpp"
#include "softchar/cli/pipeline.hpp"
#include "softchar/cli/report.hpp"
#include "softchar/cli/synth.hpp"
#include "softchar/errors.hpp"

using namespace softchar;
using namespace softchar::cli;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("softchar_test_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  static int& counter() {
    static int c = 0;
    return c;
  }
  std::string file(const std::string& name, const std::string& content) const {
    const fs::path p = path / name;
    std::ofstream out(p);
    out << content;
    return p.string();
  }
  std::string read(const std::string& name) const {
    std::ifstream in(path / name);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
};

const char* kMinimalConfig = R"(# synthetic smoke config
model = "neohookean"
samples = 12
seed = 7

[motion]
depth_samples = 16
twist_samples = 9

[[spot]]
id = 1
synth_params = [0.1, 0.45]
synth_noise_rel = 0.01
)";

}  // namespace

TEST_CASE("load_config applies defaults") {
  TempDir dir;
  const RunConfig cfg = load_config(dir.file("run.toml", kMinimalConfig));
  CHECK(cfg.model_family == constitutive::ModelFamily::NeoHookean);
  CHECK(cfg.samples == 12);
  CHECK(cfg.seed == 7);
  CHECK(cfg.scenarios.size() == 3);
  CHECK(cfg.motion.depth_max == doctest::Approx(10.0));
  CHECK(cfg.motion.depth_samples == 16);
  REQUIRE(cfg.spots.size() == 1);
  CHECK(cfg.spots[0].geometry.gauge_height == doctest::Approx(20.0));
  CHECK(cfg.spots[0].geometry.indenter_diameter == doctest::Approx(15.0));
  REQUIRE(cfg.spots[0].synth.has_value());
  CHECK(cfg.spots[0].synth->noise_rel == doctest::Approx(0.01));
  CHECK(cfg.config_hash.size() == 16);
  CHECK(cfg.warnings.empty());
}

TEST_CASE("load_config normalises inverted bounds with a warning") {
  TempDir dir;
  const std::string path = dir.file("run.toml", R"(model = "yeoh3"
samples = 5

[region]
c2 = [-4.14e-5, -3e-3]

[[spot]]
id = 1
synth_params = [0.0129, -2.016e-3, 2.7623e-4]
)");
  const RunConfig cfg = load_config(path);
  REQUIRE_FALSE(cfg.warnings.empty());
  CHECK(cfg.warnings[0].find("c2") != std::string::npos);
  CHECK(cfg.region.bounds[1].low == doctest::Approx(-3e-3));
  CHECK(cfg.region.bounds[1].high == doctest::Approx(-4.14e-5));
}

TEST_CASE("load_config reports missing CSVs by path") {
  TempDir dir;
  const std::string path = dir.file("run.toml", R"(model = "yeoh3"

[[spot]]
id = 1
force_csv = "no_such_force.csv"
torque_csv = "no_such_torque.csv"
)");
  try {
    load_config(path);
    FAIL("expected a config error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ConfigError);
    CHECK(std::string(e.what()).find("no_such_force.csv") != std::string::npos);
  }
}

TEST_CASE("load_config parse errors carry line numbers") {
  TempDir dir;
  const std::string path = dir.file("run.toml", "model = \"yeoh3\"\n\nbroken line\n");
  try {
    load_config(path);
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find(":3:") != std::string::npos);
  }
}

TEST_CASE("load_config rejects unknown keys and bad scenarios") {
  TempDir dir;
  CHECK_THROWS_AS(load_config(dir.file("a.toml", "model = \"yeoh3\"\nbogus = 1\n[[spot]]\nid = 1\nsynth_params = [0.01, -1e-3, 1e-4]\n")),
                  Error);
  CHECK_THROWS_AS(load_config(dir.file("b.toml", "model = \"yeoh3\"\nscenarios = [\"nope\"]\n[[spot]]\nid = 1\nsynth_params = [0.01, -1e-3, 1e-4]\n")),
                  Error);
  CHECK_THROWS_AS(load_config(dir.file("c.toml", "model = \"yeoh3\"\n[[spot]]\nid = 1\n[[spot]]\nid = 1\nsynth_params = [0.01, -1e-3, 1e-4]\n")),
                  Error);
}

TEST_CASE("csv ingestion") {
  TempDir dir;

  SUBCASE("minimal two-row file") {
    const std::string p =
        dir.file("f.csv", "displacement_mm,force_N\n0,0\n10,8.2\n");
    const fitting::Curve c = read_curve_csv(p, kForceHeader);
    REQUIRE(c.size() == 2);
    CHECK(c.x[1] == doctest::Approx(10.0));
  }

  SUBCASE("duplicate abscissae are averaged with a count") {
    const std::string p =
        dir.file("f.csv", "displacement_mm,force_N\n0,0\n5,2\n5,4\n10,8\n");
    IngestInfo info;
    const fitting::Curve c = read_curve_csv(p, kForceHeader, &info);
    CHECK(info.duplicates_collapsed == 1);
    REQUIRE(c.size() == 3);
    CHECK(c.y[1] == doctest::Approx(3.0));
  }

  SUBCASE("non-numeric cells name row and column") {
    const std::string p =
        dir.file("f.csv", "displacement_mm,force_N\n0,0\n5,abc\n");
    try {
      read_curve_csv(p, kForceHeader);
      FAIL("expected a data error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::DataError);
      CHECK(std::string(e.what()).find("row 3") != std::string::npos);
      CHECK(std::string(e.what()).find("column 2") != std::string::npos);
    }
  }

  SUBCASE("wrong header is rejected") {
    const std::string p = dir.file("f.csv", "depth,force\n0,0\n1,1\n");
    CHECK_THROWS_AS(read_curve_csv(p, kForceHeader), Error);
  }

  SUBCASE("non-monotone abscissae are rejected") {
    const std::string p =
        dir.file("f.csv", "displacement_mm,force_N\n0,0\n5,2\n3,1\n");
    CHECK_THROWS_AS(read_curve_csv(p, kForceHeader), Error);
  }

  SUBCASE("round trip preserves full precision") {
    fitting::Curve c = fitting::make_curve({0.0, 0.1234567890123456789, 7.5},
                                           {0.0, -1.0 / 3.0, 8.2466807096876712});
    const std::string p = (dir.path / "rt.csv").string();
    write_curve_csv(p, c, kForceHeader, "seed=1 config_hash=abc");
    const fitting::Curve back = read_curve_csv(p, kForceHeader);
    REQUIRE(back.size() == c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
      CHECK(back.x[i] == c.x[i]);
      CHECK(back.y[i] == c.y[i]);
    }
  }
}

TEST_CASE("synthetic experiments") {
  const forward::SpecimenGeometry geom{15.0, 20.0};
  forward::MotionProfile profile;
  profile.depth_samples = 12;
  profile.twist_samples = 9;
  const constitutive::MaterialModel truth{constitutive::Yeoh3{0.0129, -2.016e-3, 2.7623e-4}};

  SUBCASE("zero noise returns exact forward curves") {
    const auto [force, torque] = synth_experiment(truth, geom, profile, 0.0, 5);
    const forward::SimCurves sim = forward::simulate(truth, geom, profile);
    for (std::size_t i = 0; i < force.size(); ++i) CHECK(force.y[i] == sim.force_curve.y[i]);
    for (std::size_t i = 0; i < torque.size(); ++i) CHECK(torque.y[i] == sim.torque_curve.y[i]);
  }

  SUBCASE("seeded determinism") {
    const auto a = synth_experiment(truth, geom, profile, 0.01, 5);
    const auto b = synth_experiment(truth, geom, profile, 0.01, 5);
    const auto c = synth_experiment(truth, geom, profile, 0.01, 6);
    bool all_equal = true, any_diff = false;
    for (std::size_t i = 0; i < a.first.size(); ++i) {
      all_equal = all_equal && a.first.y[i] == b.first.y[i];
      any_diff = any_diff || a.first.y[i] != c.first.y[i];
    }
    CHECK(all_equal);
    CHECK(any_diff);
  }
}

TEST_CASE("pipeline end to end") {
  TempDir dir;
  const RunConfig cfg = load_config(dir.file("run.toml", kMinimalConfig));
  const SweepReport report = run_characterisation(cfg, 2);

  CHECK(report.total_sets == 12);
  CHECK(report.stable_sets == 12);  // neo-Hookean region is always stable
  REQUIRE(report.spots.size() == 1);
  CHECK(report.spots[0].results.size() == report.stable_sets);

  SUBCASE("winners satisfy the definitional minima") {
    const auto& spot = report.spots[0];
    for (const auto& w : spot.winners) {
      for (const auto& r : spot.results) {
        switch (w.scenario) {
          case fitting::FitScenario::SumBoth: CHECK(w.result.nmse_sum <= r.nmse_sum); break;
          case fitting::FitScenario::TorqueOnly:
            CHECK(w.result.nmse_torque <= r.nmse_torque);
            break;
          case fitting::FitScenario::ForceOnly: CHECK(w.result.nmse_force <= r.nmse_force); break;
        }
      }
    }
  }

  SUBCASE("repeat runs and worker counts do not change results") {
    const SweepReport again = run_characterisation(cfg, 1);
    REQUIRE(again.spots[0].results.size() == report.spots[0].results.size());
    for (std::size_t i = 0; i < report.spots[0].results.size(); ++i) {
      CHECK(again.spots[0].results[i].nmse_sum == report.spots[0].results[i].nmse_sum);
      CHECK(again.spots[0].results[i].nmse_force == report.spots[0].results[i].nmse_force);
    }
  }

  SUBCASE("json-lines round trip reconstructs every result exactly") {
    emit_report(report, ReportFormat::JsonLines, dir.path.string());
    std::ifstream in(dir.path / "results.jsonl");
    REQUIRE(in.good());
    std::string line;
    std::size_t records = 0;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      const nlohmann::json j = nlohmann::json::parse(line);
      ++records;
      const auto set_index = j.at("set_index").get<std::size_t>();
      const fitting::FitResult* match = nullptr;
      for (const auto& r : report.spots[0].results)
        if (r.set_index == set_index) match = &r;
      REQUIRE(match != nullptr);
      CHECK(j.at("nmse_force").get<double>() == match->nmse_force);
      CHECK(j.at("nmse_torque").get<double>() == match->nmse_torque);
      CHECK(j.at("nmse_sum").get<double>() == match->nmse_sum);
      const auto values = constitutive::parameter_values(match->params);
      CHECK(j.at("params").at("e").get<double>() == values[0]);
      CHECK(j.at("params").at("nu").get<double>() == values[1]);
      CHECK(j.at("seed").get<std::uint64_t>() == cfg.seed);
      CHECK(j.at("config_hash").get<std::string>() == cfg.config_hash);
    }
    CHECK(records == report.spots[0].results.size());

    // byte-identical re-emission
    const std::string first = dir.read("results.jsonl");
    emit_report(report, ReportFormat::JsonLines, dir.path.string());
    CHECK(dir.read("results.jsonl") == first);
  }

  SUBCASE("plot and table outputs exist and carry provenance") {
    emit_all(report, dir.path.string());
    const std::string tables = dir.read("report.txt");
    CHECK(tables.find("seed=7") != std::string::npos);
    CHECK(tables.find(cfg.config_hash) != std::string::npos);
    const std::string coeff = dir.read("coeffspace_neohookean_1.csv");
    CHECK(coeff.find("e,nu,nmse_force") != std::string::npos);
    const std::string curves = dir.read("curves_1.csv");
    CHECK(curves.find("kind,abscissa,exp,sim_I,sim_II,sim_III") != std::string::npos);
  }
}

TEST_CASE("nmse table prints the per-scenario mean row") {
  // hand-built report with known winner values
  SweepReport report;
  report.tool_version = kToolVersion;
  report.config.model_family = constitutive::ModelFamily::Ogden1;
  report.config.scenarios = {fitting::FitScenario::SumBoth};
  report.config.seed = 0;
  report.config.config_hash = "0";
  const double sums[4] = {0.1271, 0.1043, 0.1034, 0.1254};
  for (int i = 0; i < 4; ++i) {
    SpotOutcome spot;
    spot.spot_id = i + 1;
    fitting::FitResult r;
    r.params = constitutive::Ogden1{0.059, 1.9152, 1.0488};
    r.nmse_sum = sums[i];
    r.nmse_force = sums[i];
    spot.winners.push_back({fitting::FitScenario::SumBoth, r});
    report.spots.push_back(spot);
  }
  const std::string table = render_nmse_table(report);
  CHECK(table.find("0.11505") != std::string::npos);
}

TEST_CASE("empty scenario list renders header-only tables") {
  TempDir dir;
  const std::string cfg_text = std::string("scenarios = []\n") + kMinimalConfig;
  const RunConfig cfg = load_config(dir.file("run.toml", cfg_text));
  CHECK(cfg.scenarios.empty());
  const SweepReport report = run_characterisation(cfg, 1);
  const std::string winners = render_winner_table(report);
  CHECK(winners.find("Loc.") != std::string::npos);
}

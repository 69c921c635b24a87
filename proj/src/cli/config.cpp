#include "softchar/cli/config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "softchar/errors.hpp"

namespace softchar::cli {

namespace fs = std::filesystem;
using constitutive::ModelFamily;

std::uint64_t fnv1a64(const void* data, std::size_t size) {
  const auto* bytes = static_cast<const unsigned char*>(data);
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (std::size_t i = 0; i < size; ++i) {
    h ^= bytes[i];
    h *= 0x100000001b3ull;
  }
  return h;
}

namespace {

// ---- minimal TOML-style reader ---------------------------------------------
// Supported: [section], [[spot]], key = value with string / number / boolean /
// homogeneous array values, and '#' comments. That covers the whole config
// surface while keeping parse errors precise.

struct Value {
  enum class Type { Str, Num, Bool, NumArray, StrArray };
  Type type = Type::Str;
  std::string str;
  double num = 0.0;
  bool boolean = false;
  std::vector<double> nums;
  std::vector<std::string> strs;
  int line = 0;
};

using Table = std::map<std::string, Value>;

struct Doc {
  Table root;
  std::map<std::string, Table> sections;
  std::vector<Table> spots;
  std::vector<int> spot_lines;
};

[[noreturn]] void parse_fail(const std::string& path, int line, const std::string& msg) {
  fail(ErrorKind::ConfigError, path + ":" + std::to_string(line) + ": " + msg);
}

std::string strip(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b])) != 0) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1])) != 0) --e;
  return s.substr(b, e - b);
}

std::string drop_comment(const std::string& s) {
  bool quoted = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '"') quoted = !quoted;
    if (s[i] == '#' && !quoted) return s.substr(0, i);
  }
  return s;
}

bool parse_number(const std::string& text, double* out) {
  const std::string t = strip(text);
  if (t.empty()) return false;
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (end != t.c_str() + t.size()) return false;
  *out = v;
  return true;
}

std::vector<std::string> split_top_level(const std::string& body, const std::string& path,
                                         int line) {
  std::vector<std::string> parts;
  std::string cur;
  bool quoted = false;
  for (char ch : body) {
    if (ch == '"') quoted = !quoted;
    if (ch == ',' && !quoted) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (quoted) parse_fail(path, line, "unterminated string in array");
  if (!strip(cur).empty() || !parts.empty()) parts.push_back(cur);
  return parts;
}

Value parse_value(const std::string& text, const std::string& path, int line) {
  Value v;
  v.line = line;
  const std::string t = strip(text);
  if (t.empty()) parse_fail(path, line, "missing value");

  if (t.front() == '"') {
    if (t.size() < 2 || t.back() != '"') parse_fail(path, line, "unterminated string");
    v.type = Value::Type::Str;
    v.str = t.substr(1, t.size() - 2);
    return v;
  }
  if (t == "true" || t == "false") {
    v.type = Value::Type::Bool;
    v.boolean = t == "true";
    return v;
  }
  if (t.front() == '[') {
    if (t.back() != ']') parse_fail(path, line, "unterminated array");
    const auto parts = split_top_level(t.substr(1, t.size() - 2), path, line);
    bool strings = false;
    for (const auto& p : parts)
      if (!strip(p).empty() && strip(p).front() == '"') strings = true;
    if (strings) {
      v.type = Value::Type::StrArray;
      for (const auto& p : parts) {
        const Value e = parse_value(p, path, line);
        if (e.type != Value::Type::Str) parse_fail(path, line, "mixed array element types");
        v.strs.push_back(e.str);
      }
    } else {
      v.type = Value::Type::NumArray;
      for (const auto& p : parts) {
        double num = 0.0;
        if (!parse_number(p, &num)) parse_fail(path, line, "bad number '" + strip(p) + "' in array");
        v.nums.push_back(num);
      }
    }
    return v;
  }
  if (parse_number(t, &v.num)) {
    v.type = Value::Type::Num;
    return v;
  }
  parse_fail(path, line, "cannot parse value '" + t + "'");
}

Doc parse_doc(const std::string& path, std::istream& in) {
  Doc doc;
  Table* current = &doc.root;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string s = strip(drop_comment(raw));
    if (s.empty()) continue;

    if (s.rfind("[[", 0) == 0) {
      if (s.size() < 5 || s.substr(s.size() - 2) != "]]")
        parse_fail(path, line, "malformed table array header");
      const std::string name = strip(s.substr(2, s.size() - 4));
      if (name != "spot")
        parse_fail(path, line, "unknown table array '" + name + "' (only [[spot]] is supported)");
      doc.spots.emplace_back();
      doc.spot_lines.push_back(line);
      current = &doc.spots.back();
      continue;
    }
    if (s.front() == '[') {
      if (s.back() != ']') parse_fail(path, line, "malformed section header");
      const std::string name = strip(s.substr(1, s.size() - 2));
      if (name != "region" && name != "motion")
        parse_fail(path, line, "unknown section [" + name + "]");
      current = &doc.sections[name];
      continue;
    }

    const std::size_t eq = s.find('=');
    if (eq == std::string::npos) parse_fail(path, line, "expected 'key = value'");
    const std::string key = strip(s.substr(0, eq));
    if (key.empty()) parse_fail(path, line, "empty key");
    if (current->count(key) != 0) parse_fail(path, line, "duplicate key '" + key + "'");
    (*current)[key] = parse_value(s.substr(eq + 1), path, line);
  }
  return doc;
}

// ---- config construction ----------------------------------------------------

class Builder {
public:
  Builder(std::string path, const Doc& doc) : path_(std::move(path)), doc_(doc) {}

  RunConfig build() {
    RunConfig cfg;
    cfg.config_path = path_;

    cfg.model_family = read_family();
    cfg.samples = read_samples();
    cfg.seed = read_u64(doc_.root, "seed", 0);
    cfg.scenarios = read_scenarios();
    cfg.region = read_region(cfg.model_family, &cfg.warnings);
    cfg.motion = read_motion();
    cfg.spots = read_spots(cfg);
    check_unknown_keys();

    if (!errors_.empty()) {
      std::string msg = path_ + ": invalid configuration";
      for (const auto& e : errors_) msg += "\n  - " + e;
      fail(ErrorKind::ConfigError, msg);
    }
    return cfg;
  }

private:
  void error(const std::string& msg) { errors_.push_back(msg); }
  void error_at(int line, const std::string& msg) {
    errors_.push_back("line " + std::to_string(line) + ": " + msg);
  }

  const Value* find(const Table& t, const std::string& key) {
    auto it = t.find(key);
    used_.insert(&t == &doc_.root ? "root:" + key : key);
    return it == t.end() ? nullptr : &it->second;
  }

  ModelFamily read_family() {
    const Value* v = find(doc_.root, "model");
    if (v == nullptr) {
      error("missing required key 'model'");
      return ModelFamily::Yeoh3;
    }
    if (v->type != Value::Type::Str) {
      error_at(v->line, "'model' must be a string");
      return ModelFamily::Yeoh3;
    }
    if (v->str == "ogden1") return ModelFamily::Ogden1;
    if (v->str == "yeoh3") return ModelFamily::Yeoh3;
    if (v->str == "neohookean") return ModelFamily::NeoHookean;
    error_at(v->line, "unknown model '" + v->str + "' (ogden1, yeoh3, neohookean)");
    return ModelFamily::Yeoh3;
  }

  std::size_t read_samples() {
    const double n = read_num(doc_.root, "samples", 250.0);
    if (!(n >= 1.0) || n != std::floor(n)) {
      error("'samples' must be a positive integer");
      return 250;
    }
    return static_cast<std::size_t>(n);
  }

  double read_num(const Table& t, const std::string& key, double fallback) {
    const Value* v = find(t, key);
    if (v == nullptr) return fallback;
    if (v->type != Value::Type::Num) {
      error_at(v->line, "'" + key + "' must be a number");
      return fallback;
    }
    return v->num;
  }

  std::uint64_t read_u64(const Table& t, const std::string& key, std::uint64_t fallback) {
    const Value* v = find(t, key);
    if (v == nullptr) return fallback;
    if (v->type != Value::Type::Num || v->num < 0.0 || v->num != std::floor(v->num)) {
      error_at(v->line, "'" + key + "' must be a non-negative integer");
      return fallback;
    }
    return static_cast<std::uint64_t>(v->num);
  }

  std::vector<fitting::FitScenario> read_scenarios() {
    std::vector<fitting::FitScenario> out;
    const Value* v = find(doc_.root, "scenarios");
    if (v == nullptr) {
      out.assign(std::begin(fitting::kAllScenarios), std::end(fitting::kAllScenarios));
      return out;
    }
    if (v->type != Value::Type::StrArray && !(v->type == Value::Type::NumArray && v->nums.empty())) {
      error_at(v->line, "'scenarios' must be an array of strings");
      return out;
    }
    if (v->type == Value::Type::NumArray) return out;  // empty array
    for (const auto& name : v->strs) {
      try {
        out.push_back(fitting::scenario_from_name(name));
      } catch (const Error& e) {
        error_at(v->line, e.what());
      }
    }
    return out;
  }

  sampling::ParameterRegion read_region(ModelFamily family, std::vector<std::string>* warnings) {
    sampling::ParameterRegion region = sampling::default_region(family);
    auto it = doc_.sections.find("region");
    if (it != doc_.sections.end()) {
      for (const auto& [key, value] : it->second) {
        used_.insert(key);
        bool known = false;
        for (auto& bound : region.bounds) {
          if (bound.name == key) {
            known = true;
            if (value.type != Value::Type::NumArray || value.nums.size() != 2) {
              error_at(value.line, "region bound '" + key + "' must be [low, high]");
            } else {
              bound.low = value.nums[0];
              bound.high = value.nums[1];
              if (bound.low == bound.high)
                error_at(value.line, "region bound '" + key + "' is degenerate");
            }
          }
        }
        if (!known)
          error_at(value.line, "region: '" + key + "' is not a parameter of " +
                                   constitutive::family_name(family));
      }
    }
    try {
      return sampling::normalised(region, warnings);
    } catch (const Error& e) {
      error(e.what());
      return sampling::default_region(family);
    }
  }

  forward::MotionProfile read_motion() {
    forward::MotionProfile motion;
    auto it = doc_.sections.find("motion");
    if (it == doc_.sections.end()) return motion;
    const Table& t = it->second;
    motion.depth_max = read_num(t, "depth_max_mm", motion.depth_max);
    motion.depth_samples = static_cast<int>(read_num(t, "depth_samples", motion.depth_samples));
    motion.twist_start = read_num(t, "twist_start_deg", motion.twist_start);
    motion.twist_end = read_num(t, "twist_end_deg", motion.twist_end);
    motion.twist_samples = static_cast<int>(read_num(t, "twist_samples", motion.twist_samples));
    for (const auto& [key, value] : t) {
      if (key != "depth_max_mm" && key != "depth_samples" && key != "twist_start_deg" &&
          key != "twist_end_deg" && key != "twist_samples")
        error_at(value.line, "motion: unknown key '" + key + "'");
    }
    return motion;
  }

  std::vector<SpotConfig> read_spots(const RunConfig& cfg) {
    std::vector<SpotConfig> spots;
    if (doc_.spots.empty()) {
      error("at least one [[spot]] is required");
      return spots;
    }
    const fs::path base = fs::path(path_).parent_path();

    for (std::size_t s = 0; s < doc_.spots.size(); ++s) {
      const Table& t = doc_.spots[s];
      const int header_line = doc_.spot_lines[s];
      SpotConfig spot;

      const Value* id = nullptr;
      if (auto it = t.find("id"); it != t.end()) id = &it->second;
      if (id == nullptr || id->type != Value::Type::Num || id->num != std::floor(id->num)) {
        error_at(header_line, "spot needs an integer 'id'");
        continue;
      }
      spot.id = static_cast<int>(id->num);

      spot.geometry.gauge_height = get_num(t, "gauge_height_mm", 20.0, header_line);
      spot.geometry.indenter_diameter = get_num(t, "indenter_diameter_mm", 15.0, header_line);

      const Value* force_csv = value_of(t, "force_csv");
      const Value* torque_csv = value_of(t, "torque_csv");
      const Value* synth_params = value_of(t, "synth_params");
      const bool csv_mode = force_csv != nullptr || torque_csv != nullptr;
      const bool synth_mode = synth_params != nullptr || value_of(t, "synth_family") != nullptr ||
                              value_of(t, "synth_noise_rel") != nullptr ||
                              value_of(t, "synth_seed") != nullptr;
      if (csv_mode == synth_mode) {
        error_at(header_line,
                 "spot " + std::to_string(spot.id) +
                     ": provide either force_csv+torque_csv or a synth_* block, not both/neither");
        continue;
      }

      if (csv_mode) {
        if (force_csv == nullptr || torque_csv == nullptr ||
            force_csv->type != Value::Type::Str || torque_csv->type != Value::Type::Str) {
          error_at(header_line, "spot " + std::to_string(spot.id) +
                                    ": both force_csv and torque_csv strings are required");
          continue;
        }
        spot.force_csv = (base / force_csv->str).string();
        spot.torque_csv = (base / torque_csv->str).string();
        for (const auto& p : {*spot.force_csv, *spot.torque_csv})
          if (!fs::exists(p))
            error_at(header_line, "spot " + std::to_string(spot.id) + ": missing file " + p);
      } else {
        SynthSpec synth;
        ModelFamily fam = cfg.model_family;
        if (const Value* sf = value_of(t, "synth_family"); sf != nullptr) {
          if (sf->type != Value::Type::Str) {
            error_at(sf->line, "synth_family must be a string");
          } else if (sf->str == "ogden1") {
            fam = ModelFamily::Ogden1;
          } else if (sf->str == "yeoh3") {
            fam = ModelFamily::Yeoh3;
          } else if (sf->str == "neohookean") {
            fam = ModelFamily::NeoHookean;
          } else {
            error_at(sf->line, "unknown synth_family '" + sf->str + "'");
          }
        }
        if (synth_params == nullptr || synth_params->type != Value::Type::NumArray) {
          error_at(header_line,
                   "spot " + std::to_string(spot.id) + ": synth_params = [..] is required");
          continue;
        }
        if (synth_params->nums.size() != constitutive::parameter_count(fam)) {
          error_at(synth_params->line,
                   "spot " + std::to_string(spot.id) + ": synth_params needs " +
                       std::to_string(constitutive::parameter_count(fam)) + " values for " +
                       constitutive::family_name(fam));
          continue;
        }
        synth.true_model = constitutive::make_model(fam, synth_params->nums);
        try {
          constitutive::validate(synth.true_model);
        } catch (const Error& e) {
          error_at(synth_params->line, std::string("spot ") + std::to_string(spot.id) + ": " + e.what());
        }
        synth.noise_rel = get_num(t, "synth_noise_rel", 0.0, header_line);
        if (synth.noise_rel < 0.0)
          error_at(header_line, "synth_noise_rel must be >= 0");
        synth.seed = cfg.seed;
        if (auto it = t.find("synth_seed"); it != t.end()) {
          if (it->second.type != Value::Type::Num || it->second.num < 0.0) {
            error_at(it->second.line, "synth_seed must be a non-negative integer");
          } else {
            synth.seed = static_cast<std::uint64_t>(it->second.num);
            synth.seed_explicit = true;
          }
        }
        spot.synth = synth;
      }

      for (const auto& [key, value] : t) {
        static const char* known[] = {"id",          "gauge_height_mm", "indenter_diameter_mm",
                                      "force_csv",   "torque_csv",      "synth_family",
                                      "synth_params", "synth_noise_rel", "synth_seed"};
        bool ok = false;
        for (const char* k : known) ok = ok || key == k;
        if (!ok) error_at(value.line, "spot: unknown key '" + key + "'");
      }

      try {
        spot.geometry.validate();
        cfg.motion.validate(spot.geometry);
      } catch (const Error& e) {
        error_at(header_line, "spot " + std::to_string(spot.id) + ": " + e.what());
      }
      spots.push_back(std::move(spot));
    }

    for (std::size_t i = 0; i < spots.size(); ++i)
      for (std::size_t j = i + 1; j < spots.size(); ++j)
        if (spots[i].id == spots[j].id)
          error("duplicate spot id " + std::to_string(spots[i].id));
    return spots;
  }

  const Value* value_of(const Table& t, const std::string& key) {
    auto it = t.find(key);
    return it == t.end() ? nullptr : &it->second;
  }

  double get_num(const Table& t, const std::string& key, double fallback, int line) {
    const Value* v = value_of(t, key);
    if (v == nullptr) return fallback;
    if (v->type != Value::Type::Num) {
      error_at(v->line == 0 ? line : v->line, "'" + key + "' must be a number");
      return fallback;
    }
    return v->num;
  }

  void check_unknown_keys() {
    for (const auto& [key, value] : doc_.root)
      if (used_.count("root:" + key) == 0)
        error_at(value.line, "unknown key '" + key + "'");
  }

  std::string path_;
  const Doc& doc_;
  std::vector<std::string> errors_;
  std::set<std::string> used_;
};

}  // namespace

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::ConfigError, "cannot open config file " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string bytes = buffer.str();

  std::istringstream stream(bytes);
  const Doc doc = parse_doc(path, stream);
  Builder builder(path, doc);
  RunConfig cfg = builder.build();

  char hash[17];
  std::snprintf(hash, sizeof(hash), "%016llx",
                static_cast<unsigned long long>(fnv1a64(bytes.data(), bytes.size())));
  cfg.config_hash = hash;
  return cfg;
}

}  // namespace softchar::cli

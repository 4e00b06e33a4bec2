#include "vanet/sim_config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace vanet {

const char* to_string(SimMode mode) {
  switch (mode) {
    case SimMode::WellMixed: return "well_mixed";
    case SimMode::Grid: return "grid";
    case SimMode::Trace: return "trace";
  }
  return "?";
}

const char* to_string(AttachModel model) {
  return model == AttachModel::Hybrid ? "hybrid" : "baseline";
}

namespace {

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

SimMode mode_from_string(const std::string& s) {
  if (s == "well_mixed") return SimMode::WellMixed;
  if (s == "grid") return SimMode::Grid;
  if (s == "trace") return SimMode::Trace;
  throw ConfigError("mode", "must be one of well_mixed, grid, trace (got '" + s + "')");
}

AttachModel model_from_string(const std::string& s) {
  if (s == "hybrid") return AttachModel::Hybrid;
  if (s == "baseline") return AttachModel::Baseline;
  throw ConfigError("model", "must be hybrid or baseline (got '" + s + "')");
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size() || !std::isfinite(v)) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(key, "expected a real number, got '" + value + "'");
  }
}

long long parse_int(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(key, "expected an integer, got '" + value + "'");
  }
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(key, "expected a non-negative integer, got '" + value + "'");
  }
}

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

void SimConfig::validate() const {
  if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("p", "must lie in [0, 1]");
  if (m < 1) throw ConfigError("m", "must be >= 1");
  if (m0 < 1) throw ConfigError("m0", "must be >= 1");
  if (m > m0) throw ConfigError("m", "must not exceed m0");
  if (s < 0 || s > m0) throw ConfigError("s", "must lie in [0, m0]");
  if (n_per_step < 1) throw ConfigError("n_per_step", "must be >= 1");
  if (steps < 0) throw ConfigError("steps", "must be >= 0");
  if (obu_range_m <= 0.0) throw ConfigError("obu_range_m", "must be > 0");
  if (rsu_range_m <= 0.0) throw ConfigError("rsu_range_m", "must be > 0");
  if (!(epsilon > 0.0) || epsilon >= 1.0) throw ConfigError("epsilon", "must lie in (0, 1)");
  if (model == AttachModel::Baseline && baseline_M < m) {
    throw ConfigError("baseline_M", "must be >= m for the baseline model");
  }
  if (mode == SimMode::Trace && trace_path.empty()) {
    throw ConfigError("trace_path", "required when mode = trace");
  }
  if (mode == SimMode::Grid || mode == SimMode::Trace) {
    if (grid_rows < 2) throw ConfigError("grid_rows", "must be >= 2");
    if (grid_cols < 2) throw ConfigError("grid_cols", "must be >= 2");
    if (grid_block_m <= 0.0) throw ConfigError("grid_block_m", "must be > 0");
    if (grid_speed_mps <= 0.0) throw ConfigError("grid_speed_mps", "must be > 0");
  }
}

std::vector<std::pair<std::string, std::string>> SimConfig::to_key_values() const {
  std::vector<std::pair<std::string, std::string>> kv;
  kv.emplace_back("p", fmt_double(p));
  kv.emplace_back("m", std::to_string(m));
  kv.emplace_back("m0", std::to_string(m0));
  kv.emplace_back("s", std::to_string(s));
  kv.emplace_back("n_per_step", std::to_string(n_per_step));
  kv.emplace_back("steps", std::to_string(steps));
  kv.emplace_back("obu_range_m", fmt_double(obu_range_m));
  kv.emplace_back("rsu_range_m", fmt_double(rsu_range_m));
  kv.emplace_back("epsilon", fmt_double(epsilon));
  kv.emplace_back("seed", std::to_string(seed));
  kv.emplace_back("mode", to_string(mode));
  kv.emplace_back("model", to_string(model));
  if (model == AttachModel::Baseline) {
    kv.emplace_back("baseline_M", std::to_string(baseline_M));
  }
  if (mode == SimMode::Trace) {
    kv.emplace_back("trace_path", trace_path);
  }
  if (mode == SimMode::Grid || mode == SimMode::Trace) {
    kv.emplace_back("grid_rows", std::to_string(grid_rows));
    kv.emplace_back("grid_cols", std::to_string(grid_cols));
    kv.emplace_back("grid_block_m", fmt_double(grid_block_m));
    kv.emplace_back("grid_speed_mps", fmt_double(grid_speed_mps));
  }
  return kv;
}

std::string SimConfig::summary() const {
  std::ostringstream out;
  bool first = true;
  for (const auto& [key, value] : to_key_values()) {
    if (!first) out << ' ';
    out << key << '=' << value;
    first = false;
  }
  return out.str();
}

void apply_override(SimConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "p") {
    cfg.p = parse_double(key, value);
  } else if (key == "m") {
    cfg.m = static_cast<int>(parse_int(key, value));
  } else if (key == "m0") {
    cfg.m0 = static_cast<int>(parse_int(key, value));
  } else if (key == "s") {
    cfg.s = static_cast<int>(parse_int(key, value));
  } else if (key == "n_per_step") {
    cfg.n_per_step = static_cast<int>(parse_int(key, value));
  } else if (key == "steps") {
    cfg.steps = static_cast<int>(parse_int(key, value));
  } else if (key == "obu_range_m") {
    cfg.obu_range_m = parse_double(key, value);
  } else if (key == "rsu_range_m") {
    cfg.rsu_range_m = parse_double(key, value);
  } else if (key == "epsilon") {
    cfg.epsilon = parse_double(key, value);
  } else if (key == "seed") {
    cfg.seed = parse_u64(key, value);
  } else if (key == "mode") {
    cfg.mode = mode_from_string(value);
  } else if (key == "model") {
    cfg.model = model_from_string(value);
  } else if (key == "baseline_M") {
    cfg.baseline_M = static_cast<int>(parse_int(key, value));
  } else if (key == "trace_path") {
    cfg.trace_path = value;
  } else if (key == "grid_rows") {
    cfg.grid_rows = static_cast<int>(parse_int(key, value));
  } else if (key == "grid_cols") {
    cfg.grid_cols = static_cast<int>(parse_int(key, value));
  } else if (key == "grid_block_m") {
    cfg.grid_block_m = parse_double(key, value);
  } else if (key == "grid_speed_mps") {
    cfg.grid_speed_mps = parse_double(key, value);
  } else {
    throw ConfigError(key, "unknown configuration key");
  }
}

SimConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("config: cannot open '" + path + "'");
  }
  SimConfig cfg;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    const std::size_t eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw std::runtime_error(path + ":" + std::to_string(line_no) +
                               ": expected 'key = value'");
    }
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key.empty()) {
      throw std::runtime_error(path + ":" + std::to_string(line_no) + ": empty key");
    }
    apply_override(cfg, key, value);
  }
  return cfg;
}

void write_config_file(const SimConfig& cfg, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("config: cannot open '" + path + "' for writing");
  }
  for (const auto& [key, value] : cfg.to_key_values()) {
    out << key << " = " << value << "\n";
  }
}

}  // namespace vanet

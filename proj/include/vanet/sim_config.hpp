#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "vanet/attachment.hpp"
#include "vanet/mobility.hpp"

namespace vanet {

enum class SimMode { WellMixed, Grid, Trace };
enum class AttachModel { Hybrid, Baseline };

const char* to_string(SimMode mode);
const char* to_string(AttachModel model);

// Configuration or input error carrying the offending field name, so the
// CLI can report failures per field.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error("field '" + field + "': " + message), field_(std::move(field)) {}

  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

// All growth, mobility and attachment parameters for one run.
struct SimConfig {
  double p = 0.5;          // hybrid attachment probability (uniform weight)
  int m = 2;               // links per new OBU
  int m0 = 5;              // initial core size
  int s = 0;               // RSUs among the initial core
  int n_per_step = 1;      // arrivals per step (well_mixed mode)
  int steps = 100;
  double obu_range_m = kDefaultObuRangeM;
  double rsu_range_m = kDefaultRsuRangeM;
  double epsilon = kDefaultEpsilon;
  std::uint64_t seed = 0;
  SimMode mode = SimMode::WellMixed;
  AttachModel model = AttachModel::Hybrid;
  int baseline_M = 0;      // local-world size, model = baseline only
  std::string trace_path;  // mode = trace only

  // Road geometry; drives the grid trace in grid mode and the placement of
  // RSUs and initial OBUs in both grid and trace modes.
  int grid_rows = 5;
  int grid_cols = 5;
  double grid_block_m = 300.0;
  double grid_speed_mps = 10.0;

  // Throws ConfigError naming the first invalid field.
  void validate() const;

  // Field name / value pairs in declaration order, round-trippable through
  // apply_override. Backs the config file writer, provenance lines and the
  // manifest snapshot.
  std::vector<std::pair<std::string, std::string>> to_key_values() const;

  // Single provenance line: "p=0.5 m=2 ... seed=42".
  std::string summary() const;
};

// Sets one field from its textual form. Throws ConfigError for unknown
// keys or unparsable values.
void apply_override(SimConfig& cfg, const std::string& key, const std::string& value);

// Flat key-value file: one `key = value` per line, '#' comments, field
// names exactly as in SimConfig. Parsed on top of default values; the
// result is not yet validated.
SimConfig parse_config_file(const std::string& path);

void write_config_file(const SimConfig& cfg, const std::string& path);

}  // namespace vanet

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dsuq/model.hpp"

namespace dsuq {

struct GridSpec {
  std::size_t points = 2001;
  std::optional<double> lo, hi;  // both or neither; omitted -> derived from the boxes
};

struct McSpec {
  bool enabled = true;
  std::size_t samples = 1'000'000;
  std::uint64_t seed = 0;
  std::size_t histogram_bins = 50;
};

struct AnalysisConfig {
  EpistemicModel model;
  double t_final = 0.0;
  double dt = 0.005;
  int pce_order = 3;
  int subdivision = 1;
  double niigf_percentile = 0.05;
  std::vector<double> thresholds;
  std::optional<GridSpec> grid;
  McSpec mc;
  std::string output_dir = "out";
};

// Strict JSON parse: unknown keys, malformed entries, invalid masses or ranges all
// raise config_error naming the offending field.
AnalysisConfig parse_config(const std::string& text);
AnalysisConfig load_config(const std::string& path);

// Canonical form; parse(config_to_json(c).dump()) reproduces c value for value.
nlohmann::ordered_json config_to_json(const AnalysisConfig& c);

}  // namespace dsuq

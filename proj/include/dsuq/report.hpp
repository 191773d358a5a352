#pragma once

#include <filesystem>
#include <optional>
#include <vector>

#include <json.hpp>

#include "dsuq/config.hpp"
#include "dsuq/gauss_pbox.hpp"
#include "dsuq/mc_oracle.hpp"

namespace dsuq {

struct ThresholdBlock {
  double x_f;
  IntervalDS slice;  // probability interval per focal element
  double p_bet;
  double ignorance;  // integral of cpf - cbf over the slice support (unnormalized)
  double nidi;       // the same, support-normalized; 0 when the support is a point
  std::optional<McEstimate> mc;
  std::optional<Histogram> mc_histogram;
};

struct CurveSet {
  std::vector<double> grid;
  std::vector<double> cdf;
  // lower/upper envelope per focal element, aligned with the grid
  std::vector<std::pair<std::vector<double>, std::vector<double>>> envelopes;
  IgnoranceCurve ignorance;
  NiigfResult niigf;
};

struct Report {
  AnalysisConfig config;
  GaussPBoxSet moments;
  std::vector<ThresholdBlock> thresholds;
  std::optional<CurveSet> curves;
};

// Full pipeline: compile the model, combine evidence factors, propagate every joint
// box (chaos path, or plain moment integration when no input carries evidence),
// evaluate thresholds/curves, and run the Monte Carlo check when enabled.
Report run_analysis(const AnalysisConfig& cfg);

nlohmann::ordered_json report_to_json(const Report& r);

// Writes report.json plus CSV curve/histogram files into out_dir (created if
// needed). Every file is written to a temporary name and renamed, so a crash never
// leaves a partial file behind. Returns the paths written. Output bytes depend only
// on the report contents.
std::vector<std::filesystem::path> emit(const Report& r, const std::filesystem::path& out_dir);

}  // namespace dsuq

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "dsuq/model.hpp"

namespace dsuq {

struct McRunSettings {
  std::size_t samples = 1'000'000;
  std::uint64_t seed = 0;
  double dt = 0.005;  // per-sample step when no closed form applies
};

// One pignistic draw: select a focal element by mass (u_select), then uniform
// within its interval (u_within).
std::size_t pignistic_focal_index(const IntervalDS& ds, double u_select);
double sample_pignistic(const IntervalDS& ds, double u_select, double u_within);

// End-of-horizon moments for every pignistic parameter draw. Parameter draws use
// rng::uniform01(seed, i, 2*param / 2*param + 1) where params are numbered
// alpha[0..n), then q, then the two initial entries; sample i's result depends
// only on (seed, i), never on evaluation order or thread count.
struct MomentSample {
  double m1;
  double var;  // >= 0
};
std::vector<MomentSample> sample_moments(const EpistemicModel& model, double t_final,
                                         const McRunSettings& cfg);
std::vector<MomentSample> sample_moments_serial(const EpistemicModel& model, double t_final,
                                                const McRunSettings& cfg);

// P(X <= x_f | theta_i) = N(x_f; m1_i, var_i) per sample.
std::vector<double> conditional_from(std::span<const MomentSample> moments, double x_f);

// Convenience composition of the two stages.
std::vector<double> conditional_probabilities(const EpistemicModel& model, double t_final,
                                              double x_f, const McRunSettings& cfg);
std::vector<double> conditional_probabilities_serial(const EpistemicModel& model,
                                                     double t_final, double x_f,
                                                     const McRunSettings& cfg);

struct McEstimate {
  double estimate;
  double std_error;  // sample standard error of the mean
  std::size_t samples;
};

// Mean of the conditional probabilities, accumulated in sample order.
McEstimate estimate_from(std::span<const double> values);
McEstimate estimate_total_probability(const EpistemicModel& model, double t_final, double x_f,
                                      const McRunSettings& cfg);
McEstimate estimate_total_probability_serial(const EpistemicModel& model, double t_final,
                                             double x_f, const McRunSettings& cfg);

struct Histogram {
  std::vector<double> edges;           // bins + 1 ascending edges, from 0
  std::vector<std::uint64_t> counts;   // size bins, sums to the sample count
};

// Fixed-width bins over [0, max observed value].
Histogram probability_histogram(std::span<const double> values, std::size_t bins);

}  // namespace dsuq

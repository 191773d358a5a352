#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "dsuq/ds_structure.hpp"
#include "dsuq/propagate.hpp"

namespace dsuq {

// Evidence over interval-valued Gaussian descriptions; each focal element induces a
// probability box through envelope_eval.
using GaussPBoxSet = DSStructure<GaussianBox>;

// N(x; mu, sigma_sq); sigma_sq == 0 degenerates to the unit step at mu (x >= mu -> 1).
double normal_cdf(double x, double mu, double sigma_sq);

// Tight bounds on N(x; mu, sigma_sq) over the box, from monotonicity: the cdf falls
// in mu, and rises in sigma^2 left of the mean, falls right of it. Both bounds are
// attained at box corners.
std::pair<double, double> envelope_eval(const GaussianBox& box, double x);

// Evidence the p-box set carries about P(X <= x): one probability interval per focal.
IntervalDS slice_at(const GaussPBoxSet& set, double x);

// P_Bet(x) = sum_i mass_i * (lower_i(x) + upper_i(x)) / 2, evaluated literally as the
// pignistic expectation of the slice so the two routes agree bit for bit.
std::vector<double> pignistic_cdf(const GaussPBoxSet& set, std::span<const double> grid);
std::vector<double> pignistic_cdf_serial(const GaussPBoxSet& set, std::span<const double> grid);

// Unnormalized ignorance at x: integral of cpf - cbf over the slice's support.
double ignorance_at(const GaussPBoxSet& set, double x);

struct IgnoranceCurve {
  std::vector<double> igf;   // ignorance integral per grid point
  std::vector<double> nidi;  // support-normalized; 0 where the slice support is a point
};
IgnoranceCurve ignorance_curve(const GaussPBoxSet& set, std::span<const double> grid);
IgnoranceCurve ignorance_curve_serial(const GaussPBoxSet& set, std::span<const double> grid);

// Evaluation grid covering every box: [min mu - 6 sigma_max, max mu + 6 sigma_max].
std::vector<double> default_grid(const GaussPBoxSet& set, std::size_t points = 2001);

struct NiigfResult {
  double value;       // mean ignorance over the percentile window
  double x_lo, x_hi;  // window endpoints
  double percentile;
  std::size_t points;  // trapezoid points used
};

// Normalized integral of the ignorance function between the percentile-th and
// (1-percentile)-th pignistic quantiles. Quantiles are bracketed on the supplied
// grid/cdf pair and refined by linear interpolation; the ignorance function is then
// re-evaluated on a fresh window grid of at least min_points points.
NiigfResult niigf(const GaussPBoxSet& set, std::span<const double> grid,
                  std::span<const double> cdf, double percentile = 0.05,
                  std::size_t min_points = 1001);

}  // namespace dsuq

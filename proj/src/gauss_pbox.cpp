#include "dsuq/gauss_pbox.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dsuq/errors.hpp"

namespace dsuq {

double normal_cdf(double x, double mu, double sigma_sq) {
  if (sigma_sq < 0.0) throw std::invalid_argument("variance must be >= 0");
  if (sigma_sq == 0.0) return x >= mu ? 1.0 : 0.0;
  return 0.5 * std::erfc((mu - x) / std::sqrt(2.0 * sigma_sq));
}

std::pair<double, double> envelope_eval(const GaussianBox& box, double x) {
  const double lo = normal_cdf(
      x, box.mu.hi(), x < box.mu.hi() ? box.sigma_sq.lo() : box.sigma_sq.hi());
  const double hi = normal_cdf(
      x, box.mu.lo(), x < box.mu.lo() ? box.sigma_sq.hi() : box.sigma_sq.lo());
  return {lo, hi};
}

IntervalDS slice_at(const GaussPBoxSet& set, double x) {
  std::vector<FocalElement<Interval>> items;
  items.reserve(set.size());
  for (const auto& it : set) {
    const auto [lo, hi] = envelope_eval(it.focal, x);
    items.push_back({Interval(lo, hi), it.mass});
  }
  return IntervalDS(std::move(items));
}

std::vector<double> pignistic_cdf(const GaussPBoxSet& set, std::span<const double> grid) {
  std::vector<double> out(grid.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(grid.size()); ++i)
    out[static_cast<std::size_t>(i)] =
        pignistic_expectation(slice_at(set, grid[static_cast<std::size_t>(i)]));
  return out;
}

std::vector<double> pignistic_cdf_serial(const GaussPBoxSet& set, std::span<const double> grid) {
  std::vector<double> out(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i)
    out[i] = pignistic_expectation(slice_at(set, grid[i]));
  return out;
}

double ignorance_at(const GaussPBoxSet& set, double x) {
  return ignorance_integral(slice_at(set, x));
}

namespace {

void ignorance_point(const GaussPBoxSet& set, double x, double& igf, double& nd) {
  const IntervalDS slice = slice_at(set, x);
  igf = ignorance_integral(slice);
  const Interval sup = support(slice);
  nd = sup.degenerate() ? 0.0 : igf / sup.width();
}

}  // namespace

IgnoranceCurve ignorance_curve(const GaussPBoxSet& set, std::span<const double> grid) {
  IgnoranceCurve out;
  out.igf.resize(grid.size());
  out.nidi.resize(grid.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(grid.size()); ++i) {
    const auto k = static_cast<std::size_t>(i);
    ignorance_point(set, grid[k], out.igf[k], out.nidi[k]);
  }
  return out;
}

IgnoranceCurve ignorance_curve_serial(const GaussPBoxSet& set, std::span<const double> grid) {
  IgnoranceCurve out;
  out.igf.resize(grid.size());
  out.nidi.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i)
    ignorance_point(set, grid[i], out.igf[i], out.nidi[i]);
  return out;
}

std::vector<double> default_grid(const GaussPBoxSet& set, std::size_t points) {
  if (points < 2) throw std::invalid_argument("grid needs at least two points");
  double mu_lo = set[0].focal.mu.lo(), mu_hi = set[0].focal.mu.hi(), s2 = 0.0;
  for (const auto& it : set) {
    mu_lo = std::min(mu_lo, it.focal.mu.lo());
    mu_hi = std::max(mu_hi, it.focal.mu.hi());
    s2 = std::max(s2, it.focal.sigma_sq.hi());
  }
  const double sigma = std::sqrt(s2);
  const double lo = mu_lo - 6.0 * sigma;
  const double hi = mu_hi + 6.0 * sigma;
  std::vector<double> g(points);
  for (std::size_t i = 0; i < points; ++i)
    g[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
  return g;
}

namespace {

double quantile_on_grid(std::span<const double> grid, std::span<const double> cdf,
                        double target) {
  std::size_t i = 0;
  while (i < cdf.size() && cdf[i] < target) ++i;
  if (i == 0) return grid.front();
  if (i == cdf.size()) return grid.back();
  const double c0 = cdf[i - 1], c1 = cdf[i];
  if (c1 <= c0) return grid[i];
  return grid[i - 1] + (target - c0) / (c1 - c0) * (grid[i] - grid[i - 1]);
}

}  // namespace

NiigfResult niigf(const GaussPBoxSet& set, std::span<const double> grid,
                  std::span<const double> cdf, double percentile, std::size_t min_points) {
  if (grid.size() != cdf.size() || grid.size() < 2)
    throw std::invalid_argument("grid and cdf must have equal length >= 2");
  if (!(percentile > 0.0 && percentile < 0.5))
    throw std::invalid_argument("percentile must lie in (0, 0.5)");

  const double x_lo = quantile_on_grid(grid, cdf, percentile);
  const double x_hi = quantile_on_grid(grid, cdf, 1.0 - percentile);
  if (!(x_hi > x_lo))
    throw degenerate_support_error(
        "percentile window has zero width (pignistic cdf is a step here)");

  const std::size_t n = std::max<std::size_t>(min_points, 1001);
  std::vector<double> window(n);
  for (std::size_t i = 0; i < n; ++i)
    window[i] = x_lo + (x_hi - x_lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  const IgnoranceCurve curve = ignorance_curve(set, window);

  const double h = (x_hi - x_lo) / static_cast<double>(n - 1);
  double integral = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i)
    integral += 0.5 * (curve.igf[i] + curve.igf[i + 1]) * h;
  return {integral / (x_hi - x_lo), x_lo, x_hi, percentile, n};
}

}  // namespace dsuq

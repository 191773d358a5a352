#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dsuq/interval.hpp"

namespace dsuq {

// |sum of masses - 1| beyond this is rejected outright (no renormalization).
inline constexpr double kMassTolerance = 1e-9;

template <class F>
struct FocalElement {
  F focal;
  double mass;
};

// Finite body of evidence: focal elements with strictly positive masses summing to one.
template <class F>
class DSStructure {
 public:
  explicit DSStructure(std::vector<FocalElement<F>> items) : items_(std::move(items)) {
    if (items_.empty()) throw std::invalid_argument("evidence structure needs at least one focal element");
    double sum = 0.0;
    for (const auto& it : items_) {
      if (!std::isfinite(it.mass) || it.mass <= 0.0)
        throw std::invalid_argument("focal masses must be finite and strictly positive");
      sum += it.mass;
    }
    if (std::abs(sum - 1.0) > kMassTolerance)
      throw std::invalid_argument("focal masses sum to " + std::to_string(sum) +
                                  ", outside 1 +/- 1e-9");
  }

  std::size_t size() const noexcept { return items_.size(); }
  const FocalElement<F>& operator[](std::size_t i) const { return items_.at(i); }
  const std::vector<FocalElement<F>>& items() const noexcept { return items_; }

  auto begin() const noexcept { return items_.begin(); }
  auto end() const noexcept { return items_.end(); }

 private:
  std::vector<FocalElement<F>> items_;
};

using IntervalDS = DSStructure<Interval>;

// Hull of all focal intervals.
Interval support(const IntervalDS& ds);

// Cumulative belief: mass fully at or below x.
double cbf(const IntervalDS& ds, double x);

// Cumulative plausibility: mass not fully above x.
double cpf(const IntervalDS& ds, double x);

// Pignistic density: each interval spreads its mass uniformly. Point-valued focal
// elements carry atoms, which a density cannot represent; evaluating exactly on an
// atom throws std::domain_error, elsewhere atoms contribute nothing.
double pignistic_pdf(const IntervalDS& ds, double x);

// Mean of the pignistic distribution (atoms included): sum of mass * midpoint.
double pignistic_expectation(const IntervalDS& ds);

// Integral of cpf - cbf over the support, by exact summation between endpoint
// breakpoints (the integrand is a step function).
double ignorance_integral(const IntervalDS& ds);

// Ignorance integral normalized by the support width, in [0, 1].
// Throws degenerate_support_error when the support has zero width.
double nidi(const IntervalDS& ds);

// Joint structure under evidential independence: Cartesian products of focal
// intervals with multiplied masses. Output order is colexicographic in the factor
// indices: the FIRST factor's index varies fastest.
DSStructure<Box> convolve_independent(std::span<const IntervalDS> factors);

}  // namespace dsuq

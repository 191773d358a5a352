#include "dsuq/ds_structure.hpp"

#include <algorithm>
#include <cstddef>

#include "dsuq/errors.hpp"

namespace dsuq {

Interval support(const IntervalDS& ds) {
  double lo = ds[0].focal.lo(), hi = ds[0].focal.hi();
  for (const auto& it : ds) {
    lo = std::min(lo, it.focal.lo());
    hi = std::max(hi, it.focal.hi());
  }
  return Interval(lo, hi);
}

double cbf(const IntervalDS& ds, double x) {
  double s = 0.0;
  for (const auto& it : ds)
    if (it.focal.hi() <= x) s += it.mass;
  return s;
}

double cpf(const IntervalDS& ds, double x) {
  double s = 0.0;
  for (const auto& it : ds)
    if (it.focal.lo() <= x) s += it.mass;
  return s;
}

double pignistic_pdf(const IntervalDS& ds, double x) {
  double s = 0.0;
  for (const auto& it : ds) {
    if (it.focal.degenerate()) {
      if (it.focal.lo() == x)
        throw std::domain_error("pignistic density undefined at point-valued focal element");
      continue;
    }
    if (it.focal.contains(x)) s += it.mass / it.focal.width();
  }
  return s;
}

double pignistic_expectation(const IntervalDS& ds) {
  double s = 0.0;
  for (const auto& it : ds) s += it.mass * 0.5 * (it.focal.lo() + it.focal.hi());
  return s;
}

double ignorance_integral(const IntervalDS& ds) {
  // cpf - cbf is constant between consecutive focal endpoints; sum segment by segment.
  std::vector<double> bp;
  bp.reserve(2 * ds.size());
  for (const auto& it : ds) {
    bp.push_back(it.focal.lo());
    bp.push_back(it.focal.hi());
  }
  std::sort(bp.begin(), bp.end());
  bp.erase(std::unique(bp.begin(), bp.end()), bp.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
    const double len = bp[i + 1] - bp[i];
    if (len <= 0.0) continue;
    const double mid = 0.5 * (bp[i] + bp[i + 1]);
    total += (cpf(ds, mid) - cbf(ds, mid)) * len;
  }
  return total;
}

double nidi(const IntervalDS& ds) {
  const Interval sup = support(ds);
  if (sup.degenerate())
    throw degenerate_support_error("nidi undefined on zero-width support");
  return ignorance_integral(ds) / sup.width();
}

DSStructure<Box> convolve_independent(std::span<const IntervalDS> factors) {
  if (factors.empty())
    throw std::invalid_argument("independent combination needs at least one factor");
  std::size_t count = 1;
  for (const auto& f : factors) count *= f.size();

  std::vector<FocalElement<Box>> joint;
  joint.reserve(count);
  std::vector<std::size_t> idx(factors.size(), 0);
  for (std::size_t k = 0; k < count; ++k) {
    std::vector<Interval> dims;
    dims.reserve(factors.size());
    double mass = 1.0;
    for (std::size_t d = 0; d < factors.size(); ++d) {
      const auto& it = factors[d][idx[d]];
      dims.emplace_back(it.focal);
      mass *= it.mass;
    }
    joint.push_back({Box(std::move(dims)), mass});
    // colexicographic advance: first factor's index moves fastest
    for (std::size_t d = 0; d < factors.size(); ++d) {
      if (++idx[d] < factors[d].size()) break;
      idx[d] = 0;
    }
  }
  return DSStructure<Box>(std::move(joint));
}

}  // namespace dsuq

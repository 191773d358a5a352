#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace dsuq {

// Closed real interval [lo, hi]; degenerate (lo == hi) is allowed.
class Interval {
 public:
  Interval(double lo, double hi) : lo_(lo), hi_(hi) {
    if (!std::isfinite(lo) || !std::isfinite(hi))
      throw std::invalid_argument("interval endpoints must be finite");
    if (lo > hi)
      throw std::invalid_argument("interval endpoints out of order: [" +
                                  std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }

  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }
  double width() const noexcept { return hi_ - lo_; }
  double mid() const noexcept { return 0.5 * (lo_ + hi_); }
  bool degenerate() const noexcept { return lo_ == hi_; }
  bool contains(double x) const noexcept { return lo_ <= x && x <= hi_; }

  friend bool operator==(const Interval& a, const Interval& b) noexcept {
    return a.lo_ == b.lo_ && a.hi_ == b.hi_;
  }

 private:
  double lo_, hi_;
};

// Axis-aligned box: one interval per dimension.
class Box {
 public:
  explicit Box(std::vector<Interval> dims) : dims_(std::move(dims)) {
    if (dims_.empty()) throw std::invalid_argument("box needs at least one dimension");
  }

  std::size_t dims() const noexcept { return dims_.size(); }
  const Interval& operator[](std::size_t d) const { return dims_.at(d); }
  const std::vector<Interval>& intervals() const noexcept { return dims_; }

 private:
  std::vector<Interval> dims_;
};

}  // namespace dsuq

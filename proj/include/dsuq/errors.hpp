#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace dsuq {

// Config file rejected (parse failure, schema violation, bad mass sum, ...).
class config_error : public std::runtime_error {
 public:
  explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

// Moment state left the Gaussian-representable set (m2 - m1^2 < -tolerance).
class variance_error : public std::runtime_error {
 public:
  explicit variance_error(const std::string& what, double at_time = NAN)
      : std::runtime_error(what), at_time_(at_time) {}
  double at_time() const noexcept { return at_time_; }

 private:
  double at_time_;
};

// Normalized quantity requested over a zero-width support.
class degenerate_support_error : public std::domain_error {
 public:
  explicit degenerate_support_error(const std::string& what) : std::domain_error(what) {}
};

}  // namespace dsuq

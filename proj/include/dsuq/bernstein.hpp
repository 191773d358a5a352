#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "dsuq/interval.hpp"
#include "dsuq/pce.hpp"

namespace dsuq {

inline constexpr int kMaxBernsteinDegree = 48;

// Dense multivariate polynomial in the monomial basis, fixed per-dim degrees.
// The domain ([-1,1]^r or [0,1]^r) is tracked by the caller.
class TensorPoly {
 public:
  explicit TensorPoly(std::vector<int> degrees);

  int dims() const noexcept { return static_cast<int>(degrees_.size()); }
  const std::vector<int>& degrees() const noexcept { return degrees_; }
  std::size_t size() const noexcept { return c_.size(); }
  std::size_t stride(int d) const { return strides_.at(static_cast<std::size_t>(d)); }

  double& operator[](std::size_t flat) { return c_[flat]; }
  double operator[](std::size_t flat) const { return c_[flat]; }
  std::size_t flat_index(std::span<const int> powers) const;
  const std::vector<double>& coeffs() const noexcept { return c_; }

  double evaluate(std::span<const double> x) const;

  // Exact product (degrees add).
  static TensorPoly multiply(const TensorPoly& a, const TensorPoly& b);
  // Exact difference on the per-dim max degrees of the operands.
  static TensorPoly subtract(const TensorPoly& a, const TensorPoly& b);
  // Same polynomial on a higher-degree coefficient grid.
  TensorPoly embedded(const std::vector<int>& degrees) const;

  // In-place substitution x_d = scale * u + shift (new variable u keeps the slot).
  void substitute_affine(int d, double scale, double shift);

 private:
  std::vector<int> degrees_;
  std::vector<std::size_t> strides_;
  std::vector<double> c_;
};

// Legendre expansion -> monomial coefficients on [-1,1]^r, at the full per-dim
// basis degree (no trimming of trailing zeros; the enclosure degree is part of
// the bound's definition).
TensorPoly legendre_to_monomial(std::span<const double> coeffs, const PCEBasis& basis);

// Bernstein coefficients on [0,1]^r of a monomial-basis polynomial on [0,1]^r,
// per-dim lower-triangular transform b_i = sum_{j<=i} C(i,j)/C(N,j) a_j.
std::vector<double> bernstein_coefficients(const TensorPoly& unit_poly);

// Enclosure of the range over [0,1]^r: [min, max] of the Bernstein coefficients.
Interval bernstein_range(const TensorPoly& unit_poly);

// Range enclosure over [-1,1]^r with optional uniform subdivision into
// subdivision^r cells (1 = plain Garloff bound).
Interval enclose_range(const TensorPoly& sym_cube_poly, int subdivision = 1);
Interval enclose_range(std::span<const double> pce_coeffs, const PCEBasis& basis,
                       int subdivision = 1);

}  // namespace dsuq

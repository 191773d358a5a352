#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <mutex>
#include <span>
#include <vector>

namespace dsuq {

inline constexpr std::size_t kDefaultBasisCap = 3003;
inline constexpr int kMaxPceOrder = 24;

// Nodes and weights of n-point Gauss-Legendre quadrature on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

// L_0(x) .. L_order(x), standard (unnormalized) Legendre polynomials.
std::vector<double> legendre_values(int order, double x);

// Total-degree tensor Legendre basis over [-1,1]^dims with the NORMALIZED uniform
// product measure (so <psi_0^2> = 1 and <psi_a^2> = prod_d 1/(2 a_d + 1)).
class PCEBasis {
 public:
  static PCEBasis build(int dims, int order, std::size_t max_terms = kDefaultBasisCap);

  int dims() const noexcept { return dims_; }
  int order() const noexcept { return order_; }
  std::size_t size() const noexcept { return index_set_.size(); }
  const std::vector<int>& index(std::size_t k) const { return index_set_.at(k); }
  std::size_t unit_index(int d) const;  // position of the first-order index along dim d
  double norm_sq(std::size_t k) const { return norm_sq_.at(k); }

  // Raw triple moment <psi_a psi_b psi_c> under the normalized measure.
  double triple(std::size_t a, std::size_t b, std::size_t c) const;

  // Galerkin (pseudo-spectral) product: out_c = sum_ab u_a v_b <pa pb pc> / <pc^2>.
  void multiply(std::span<const double> u, std::span<const double> v,
                std::span<double> out) const;

  double evaluate(std::span<const double> coeffs, std::span<const double> xi) const;

  std::vector<double> constant_coeffs(double value) const;
  // Expansion of mid + half * xi_d (the affine image of [-1,1] along dim d).
  std::vector<double> affine_coeffs(double mid, double half, int d) const;

 private:
  PCEBasis() = default;

  int dims_ = 0, order_ = 0;
  std::vector<std::vector<int>> index_set_;
  std::vector<std::size_t> unit_pos_;
  std::vector<double> norm_sq_;
  std::vector<int> total_deg_;
  std::vector<double> triple_1d_;  // (order+1)^3 one-dimensional table
  struct ProductTerm {
    std::uint32_t a, b, c;
    double value;  // <pa pb pc> / <pc^2>
  };
  // The sparse product table can run to millions of entries near the size cap, so
  // it is materialized on first use; call_once keeps concurrent multiplies safe.
  struct Products {
    std::once_flag built;
    std::vector<ProductTerm> terms;
  };
  std::unique_ptr<Products> products_;

  void ensure_products() const { std::call_once(products_->built, [this] { build_products(); }); }
  void build_products() const;

  double triple_1d(int i, int j, int k) const {
    const int n = order_ + 1;
    return triple_1d_[(static_cast<std::size_t>(i) * n + j) * n + k];
  }
};

// Coefficient vector bound to a basis; ring operations use the Galerkin product,
// so moment_rhs_closure runs unchanged on expansions.
class GalerkinVec {
 public:
  GalerkinVec(const PCEBasis& basis, std::vector<double> coeffs)
      : basis_(&basis), c_(std::move(coeffs)) {}

  const std::vector<double>& coeffs() const noexcept { return c_; }
  std::vector<double>& coeffs() noexcept { return c_; }
  const PCEBasis& basis() const noexcept { return *basis_; }

  friend GalerkinVec operator+(const GalerkinVec& a, const GalerkinVec& b) {
    GalerkinVec r = a;
    for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] += b.c_[i];
    return r;
  }
  friend GalerkinVec operator-(const GalerkinVec& a, const GalerkinVec& b) {
    GalerkinVec r = a;
    for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] -= b.c_[i];
    return r;
  }
  friend GalerkinVec operator*(const GalerkinVec& a, const GalerkinVec& b) {
    GalerkinVec r(*a.basis_, std::vector<double>(a.c_.size(), 0.0));
    a.basis_->multiply(a.c_, b.c_, r.c_);
    return r;
  }
  friend GalerkinVec operator*(double s, const GalerkinVec& a) {
    GalerkinVec r = a;
    for (double& x : r.c_) x *= s;
    return r;
  }
  friend GalerkinVec operator*(const GalerkinVec& a, double s) { return s * a; }

 private:
  const PCEBasis* basis_;
  std::vector<double> c_;
};

}  // namespace dsuq

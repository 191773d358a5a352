#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "dsuq/errors.hpp"

namespace dsuq {

// States with m2 - m1^2 in [-kVarianceTolerance, 0) are treated as roundoff and
// clamped to zero variance; anything lower is a genuine closure breakdown.
inline constexpr double kVarianceTolerance = 1e-10;

// First two raw moments of the state density, assumed Gaussian.
class MomentState {
 public:
  MomentState(double m1, double m2);
  double m1() const noexcept { return m1_; }
  double m2() const noexcept { return m2_; }
  double variance() const noexcept { return m2_ - m1_ * m1_; }

 private:
  double m1_, m2_;
};

// dx = -sum_i alpha[i] x^{i+1} dt + q dW, fixed coefficients.
class PolynomialDriftModel {
 public:
  PolynomialDriftModel(std::vector<double> alpha, double q_sq, MomentState initial);
  const std::vector<double>& alpha() const noexcept { return alpha_; }
  double q_sq() const noexcept { return q_sq_; }
  const MomentState& initial() const noexcept { return initial_; }

 private:
  std::vector<double> alpha_;
  double q_sq_;
  MomentState initial_;
};

double binomial(int n, int k);

// E[x^k] for x ~ N(mu, var), k >= 1, written over any commutative ring T that
// supports T+T, T-T, T*T and scaling by double. The same code produces scalar
// moments and Galerkin coefficient vectors.
template <class T>
T gaussian_raw_moment_from(int k, const T& mu, const T& var) {
  if (k < 1) throw std::invalid_argument("moment order must be >= 1");
  std::vector<T> mu_pow;  // mu^1 .. mu^k
  mu_pow.reserve(static_cast<std::size_t>(k));
  mu_pow.push_back(mu);
  for (int i = 1; i < k; ++i) mu_pow.push_back(mu_pow.back() * mu);
  std::vector<T> var_pow;  // var^1 .. var^{k/2}
  var_pow.reserve(static_cast<std::size_t>(k / 2));
  if (k >= 2) {
    var_pow.push_back(var);
    for (int i = 2; i <= k / 2; ++i) var_pow.push_back(var_pow.back() * var);
  }
  // sum over even central orders j: C(k,j) (j-1)!! mu^{k-j} var^{j/2}
  T acc = mu_pow[static_cast<std::size_t>(k) - 1];
  double dfact = 1.0;  // (j-1)!! for even j
  for (int j = 2; j <= k; j += 2) {
    dfact *= j - 1;
    const double w = binomial(k, j) * dfact;
    const T& vp = var_pow[static_cast<std::size_t>(j / 2) - 1];
    if (j == k)
      acc = acc + w * vp;
    else
      acc = acc + w * (vp * mu_pow[static_cast<std::size_t>(k - j) - 1]);
  }
  return acc;
}

// Moment equations under the Gaussian closure:
//   dm1 = -sum_i alpha_i m_i
//   dm2 = -2 sum_i alpha_i m_{i+1} + q^2
// with m_j, j > 2, expressed through (m1, m2) via gaussian_raw_moment_from.
template <class T>
void moment_rhs_closure(std::span<const T> alpha, const T& q_sq, const T& m1, const T& m2,
                        T& dm1, T& dm2) {
  const std::size_t n = alpha.size();
  if (n == 0) throw std::invalid_argument("drift needs at least one coefficient");
  std::vector<T> mom;  // m_1 .. m_{n+1}
  mom.reserve(n + 1);
  mom.push_back(m1);
  mom.push_back(m2);
  if (n >= 2) {
    const T var = m2 - m1 * m1;
    for (std::size_t k = 3; k <= n + 1; ++k)
      mom.push_back(gaussian_raw_moment_from(static_cast<int>(k), m1, var));
  }
  T s1 = alpha[0] * mom[0];
  for (std::size_t i = 1; i < n; ++i) s1 = s1 + alpha[i] * mom[i];
  dm1 = -1.0 * s1;
  T s2 = alpha[0] * mom[1];
  for (std::size_t i = 1; i < n; ++i) s2 = s2 + alpha[i] * mom[i + 1];
  dm2 = -2.0 * s2 + q_sq;
}

// Scalar raw moment with variance validation (k >= 0).
double gaussian_raw_moment(int k, double m1, double m2);

// Scalar closure right-hand side.
std::pair<double, double> moment_rhs(const PolynomialDriftModel& model, const MomentState& s);

// Classic fixed-step RK4 from t=0 to t_final, final step shortened to land exactly.
// Throws variance_error (with the failure time) if the state leaves the
// Gaussian-representable set beyond kVarianceTolerance at any accepted step.
MomentState integrate_moments(const PolynomialDriftModel& model, double t_final, double dt);

// Closed form for dx = -a x dt + q dW:
//   m1(t) = m1_0 e^{-a t}
//   m2(t) = (m2_0 - q^2/(2a)) e^{-2 a t} + q^2/(2a)
// a == 0 has no such form and throws std::domain_error.
MomentState linear_exact(double a, double q_sq, double m1_0, double m2_0, double t);

}  // namespace dsuq

#include "dsuq/moment_dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace dsuq {
namespace {

// Clamp roundoff-negative variance to zero; anything worse is a closure breakdown.
std::pair<double, double> sanitized(double m1, double m2, double t) {
  const double var = m2 - m1 * m1;
  if (!(var >= -kVarianceTolerance))
    throw variance_error("moment state lost positive variance (m2 - m1^2 = " +
                             std::to_string(var) + ") at t = " + std::to_string(t),
                         t);
  if (var < 0.0) m2 = m1 * m1;
  return {m1, m2};
}

}  // namespace

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return std::round(r);
}

MomentState::MomentState(double m1, double m2) : m1_(m1), m2_(m2) {
  if (!std::isfinite(m1) || !std::isfinite(m2))
    throw std::invalid_argument("moments must be finite");
  const double var = m2 - m1 * m1;
  if (!(var >= -kVarianceTolerance))
    throw variance_error("invalid moment pair: m2 - m1^2 = " + std::to_string(var));
  if (var < 0.0) m2_ = m1 * m1;
}

PolynomialDriftModel::PolynomialDriftModel(std::vector<double> alpha, double q_sq,
                                           MomentState initial)
    : alpha_(std::move(alpha)), q_sq_(q_sq), initial_(initial) {
  if (alpha_.empty()) throw std::invalid_argument("drift needs at least one coefficient");
  for (double a : alpha_)
    if (!std::isfinite(a)) throw std::invalid_argument("drift coefficients must be finite");
  if (!std::isfinite(q_sq_) || q_sq_ < 0.0)
    throw std::invalid_argument("noise intensity q^2 must be finite and >= 0");
}

double gaussian_raw_moment(int k, double m1, double m2) {
  if (k < 0) throw std::invalid_argument("moment order must be >= 0");
  if (k == 0) return 1.0;
  if (k == 1) return m1;
  auto [mu, m2c] = sanitized(m1, m2, NAN);
  if (k == 2) return m2c;
  return gaussian_raw_moment_from(k, mu, m2c - mu * mu);
}

std::pair<double, double> moment_rhs(const PolynomialDriftModel& model, const MomentState& s) {
  double dm1 = 0.0, dm2 = 0.0;
  const std::span<const double> alpha(model.alpha());
  moment_rhs_closure<double>(alpha, model.q_sq(), s.m1(), s.m2(), dm1, dm2);
  return {dm1, dm2};
}

MomentState integrate_moments(const PolynomialDriftModel& model, double t_final, double dt) {
  if (!(t_final >= 0.0)) throw std::invalid_argument("t_final must be >= 0");
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be > 0");

  double m1 = model.initial().m1();
  double m2 = model.initial().m2();
  const std::span<const double> alpha(model.alpha());
  const auto rhs = [&](double t, double a, double b) {
    auto [x, y] = sanitized(a, b, t);
    double d1 = 0.0, d2 = 0.0;
    moment_rhs_closure<double>(alpha, model.q_sq(), x, y, d1, d2);
    return std::pair{d1, d2};
  };

  const double tiny = 1e-12 * std::max(1.0, t_final);
  double t = 0.0;
  while (t_final - t > tiny) {
    const double h = std::min(dt, t_final - t);
    const auto k1 = rhs(t, m1, m2);
    const auto k2 = rhs(t + 0.5 * h, m1 + 0.5 * h * k1.first, m2 + 0.5 * h * k1.second);
    const auto k3 = rhs(t + 0.5 * h, m1 + 0.5 * h * k2.first, m2 + 0.5 * h * k2.second);
    const auto k4 = rhs(t + h, m1 + h * k3.first, m2 + h * k3.second);
    m1 += h / 6.0 * (k1.first + 2.0 * k2.first + 2.0 * k3.first + k4.first);
    m2 += h / 6.0 * (k1.second + 2.0 * k2.second + 2.0 * k3.second + k4.second);
    t = (h < dt) ? t_final : t + dt;
    std::tie(m1, m2) = sanitized(m1, m2, t);
  }
  return MomentState(m1, m2);
}

MomentState linear_exact(double a, double q_sq, double m1_0, double m2_0, double t) {
  if (!(t >= 0.0)) throw std::invalid_argument("t must be >= 0");
  if (!std::isfinite(a)) throw std::invalid_argument("decay rate must be finite");
  if (!std::isfinite(q_sq) || q_sq < 0.0)
    throw std::invalid_argument("noise intensity q^2 must be finite and >= 0");
  if (a == 0.0)
    throw std::domain_error(
        "closed form requires a != 0 (the a -> 0 limit is m2 = m2_0 + q^2 t)");
  const MomentState init(m1_0, m2_0);  // validates the pair
  const double m1 = init.m1() * std::exp(-a * t);
  const double qs = q_sq / (2.0 * a);
  const double m2 = (init.m2() - qs) * std::exp(-2.0 * a * t) + qs;
  return MomentState(m1, m2);
}

}  // namespace dsuq

#include "dsuq/propagate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "dsuq/errors.hpp"

namespace dsuq {
namespace {

struct PairState {
  GalerkinVec m1, m2;
};

PairState operator+(const PairState& a, const PairState& b) {
  return {a.m1 + b.m1, a.m2 + b.m2};
}
PairState operator*(double s, const PairState& a) { return {s * a.m1, s * a.m2}; }

}  // namespace

ExpandedModel expand_model(const Box& box, std::span<const SlotBinding> bindings,
                           const ScalarModelTemplate& tmpl, const PCEBasis& basis) {
  const std::size_t r = box.dims();
  if (bindings.size() != r)
    throw std::invalid_argument("one slot binding per box dimension required");
  if (static_cast<std::size_t>(basis.dims()) != r)
    throw std::invalid_argument("basis dimension does not match the box");
  if (tmpl.alpha.empty()) throw std::invalid_argument("drift needs at least one coefficient");
  if (!std::isfinite(tmpl.q) || tmpl.q < 0.0)
    throw std::invalid_argument("noise amplitude must be finite and >= 0");

  ExpandedModel em;
  em.alpha.reserve(tmpl.alpha.size());
  for (double a : tmpl.alpha) em.alpha.push_back(basis.constant_coeffs(a));
  em.q = basis.constant_coeffs(tmpl.q);

  std::vector<double> m1v, m2v, meanv, varv;
  if (tmpl.raw_moments) {
    m1v = basis.constant_coeffs(tmpl.init_a);
    m2v = basis.constant_coeffs(tmpl.init_b);
  } else {
    if (tmpl.init_b < 0.0) throw std::invalid_argument("initial variance must be >= 0");
    meanv = basis.constant_coeffs(tmpl.init_a);
    varv = basis.constant_coeffs(tmpl.init_b);
  }

  std::vector<bool> slot_used(6 + tmpl.alpha.size(), false);
  for (std::size_t d = 0; d < r; ++d) {
    const auto& bd = bindings[d];
    const Interval& iv = box[d];
    const auto affine = basis.affine_coeffs(iv.mid(), 0.5 * iv.width(), static_cast<int>(d));
    std::size_t used_key = 0;
    switch (bd.slot) {
      case ModelSlot::DriftCoeff:
        if (bd.index < 0 || static_cast<std::size_t>(bd.index) >= tmpl.alpha.size())
          throw std::invalid_argument("drift coefficient index out of range");
        em.alpha[static_cast<std::size_t>(bd.index)] = affine;
        used_key = 6 + static_cast<std::size_t>(bd.index);
        break;
      case ModelSlot::NoiseAmplitude:
        if (iv.lo() < 0.0) throw std::invalid_argument("noise amplitude must be >= 0");
        em.q = affine;
        used_key = 1;
        break;
      case ModelSlot::InitialM1:
        if (!tmpl.raw_moments)
          throw std::invalid_argument("raw-moment binding in a mean/variance model");
        m1v = affine;
        used_key = 2;
        break;
      case ModelSlot::InitialM2:
        if (!tmpl.raw_moments)
          throw std::invalid_argument("raw-moment binding in a mean/variance model");
        m2v = affine;
        used_key = 3;
        break;
      case ModelSlot::InitialMean:
        if (tmpl.raw_moments)
          throw std::invalid_argument("mean/variance binding in a raw-moment model");
        meanv = affine;
        used_key = 4;
        break;
      case ModelSlot::InitialVariance:
        if (tmpl.raw_moments)
          throw std::invalid_argument("mean/variance binding in a raw-moment model");
        if (iv.lo() < 0.0) throw std::invalid_argument("initial variance must be >= 0");
        varv = affine;
        used_key = 5;
        break;
    }
    if (slot_used[used_key]) throw std::invalid_argument("two box dimensions bound to one slot");
    slot_used[used_key] = true;
  }

  em.q_sq.assign(basis.size(), 0.0);
  basis.multiply(em.q, em.q, em.q_sq);

  if (tmpl.raw_moments) {
    em.initial.m1 = std::move(m1v);
    em.initial.m2 = std::move(m2v);
  } else {
    std::vector<double> mean_sq(basis.size(), 0.0);
    basis.multiply(meanv, meanv, mean_sq);
    for (std::size_t i = 0; i < varv.size(); ++i) varv[i] += mean_sq[i];
    em.initial.m1 = std::move(meanv);
    em.initial.m2 = std::move(varv);
  }

  // Initial moments are affine in xi, so corner evaluation bounds m2 - m1^2 exactly.
  const std::size_t corners = std::size_t{1} << r;
  for (std::size_t c = 0; c < corners; ++c) {
    std::vector<double> xi(r);
    for (std::size_t d = 0; d < r; ++d) xi[d] = (c >> d) & 1 ? 1.0 : -1.0;
    const double m1c = basis.evaluate(em.initial.m1, xi);
    const double m2c = basis.evaluate(em.initial.m2, xi);
    if (!(m2c - m1c * m1c >= -kVarianceTolerance))
      throw variance_error("initial moments violate m2 >= m1^2 inside the box", 0.0);
  }
  return em;
}

ExpandedState integrate_expanded(const ExpandedModel& em, const PCEBasis& basis,
                                 double t_final, double dt) {
  if (!(t_final >= 0.0)) throw std::invalid_argument("t_final must be >= 0");
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be > 0");

  std::vector<GalerkinVec> alpha;
  alpha.reserve(em.alpha.size());
  for (const auto& a : em.alpha) alpha.emplace_back(basis, a);
  const GalerkinVec q_sq(basis, em.q_sq);

  const auto rhs = [&](double, const PairState& s) {
    GalerkinVec d1(basis, std::vector<double>(basis.size(), 0.0));
    GalerkinVec d2 = d1;
    moment_rhs_closure<GalerkinVec>(std::span<const GalerkinVec>(alpha), q_sq, s.m1, s.m2, d1,
                                    d2);
    return PairState{std::move(d1), std::move(d2)};
  };

  PairState y{GalerkinVec(basis, em.initial.m1), GalerkinVec(basis, em.initial.m2)};
  const double tiny = 1e-12 * std::max(1.0, t_final);
  double t = 0.0;
  while (t_final - t > tiny) {
    const double h = std::min(dt, t_final - t);
    const PairState k1 = rhs(t, y);
    const PairState k2 = rhs(t + 0.5 * h, y + 0.5 * h * k1);
    const PairState k3 = rhs(t + 0.5 * h, y + 0.5 * h * k2);
    const PairState k4 = rhs(t + h, y + h * k3);
    y = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    t = (h < dt) ? t_final : t + dt;
  }
  return {y.m1.coeffs(), y.m2.coeffs()};
}

GaussianBox bound_moments(const ExpandedState& state, const PCEBasis& basis, int subdivision) {
  const Interval mu = enclose_range(state.m1, basis, subdivision);

  const TensorPoly m1_mono = legendre_to_monomial(state.m1, basis);
  const TensorPoly m2_mono = legendre_to_monomial(state.m2, basis);
  const TensorPoly var_mono = TensorPoly::subtract(m2_mono, TensorPoly::multiply(m1_mono, m1_mono));
  const Interval var = enclose_range(var_mono, subdivision);

  if (var.hi() < -kVarianceTolerance)
    throw variance_error("variance enclosure entirely negative: [" +
                         std::to_string(var.lo()) + ", " + std::to_string(var.hi()) + "]");
  const bool clamped = var.lo() < 0.0;
  return {mu, Interval(std::max(var.lo(), 0.0), std::max(var.hi(), 0.0)), clamped};
}

GaussianBox propagate_box(const Box& box, std::span<const SlotBinding> bindings,
                          const ScalarModelTemplate& tmpl, const PCEBasis& basis,
                          const PropagationSettings& settings) {
  if (settings.subdivision < 1) throw std::invalid_argument("subdivision count must be >= 1");
  const ExpandedModel em = expand_model(box, bindings, tmpl, basis);
  const ExpandedState end = integrate_expanded(em, basis, settings.t_final, settings.dt);
  return bound_moments(end, basis, settings.subdivision);
}

}  // namespace dsuq

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "dsuq/bernstein.hpp"
#include "dsuq/ds_structure.hpp"
#include "dsuq/moment_dynamics.hpp"
#include "dsuq/pce.hpp"

namespace dsuq {

// Which scalar of the model a box dimension replaces.
enum class ModelSlot {
  DriftCoeff,       // alpha[index]
  NoiseAmplitude,   // q (the amplitude; q^2 is formed inside)
  InitialM1,        // raw first moment
  InitialM2,        // raw second moment
  InitialMean,      // mean of the initial Gaussian
  InitialVariance,  // variance of the initial Gaussian
};

struct SlotBinding {
  ModelSlot slot;
  int index = 0;  // drift coefficient position; 0 for the other slots
};

// Scalar values for every slot not taken over by a box dimension.
struct ScalarModelTemplate {
  std::vector<double> alpha;
  double q = 0.0;
  bool raw_moments = true;  // initial pair is (m1_0, m2_0) if true, else (mean, variance)
  double init_a = 0.0;
  double init_b = 0.0;
};

struct PropagationSettings {
  double t_final = 0.0;
  double dt = 0.005;
  int subdivision = 1;  // per-dim cells for the range enclosure
};

// Interval-valued Gaussian description of the state at t_final.
struct GaussianBox {
  Interval mu;
  Interval sigma_sq;
  bool sigma_clamped = false;  // variance lower bound clipped at zero
};

struct ExpandedState {
  std::vector<double> m1, m2;
};

struct ExpandedModel {
  std::vector<std::vector<double>> alpha;
  std::vector<double> q;     // amplitude expansion
  std::vector<double> q_sq;  // Galerkin square of the amplitude
  ExpandedState initial;
};

// Affine chaos expansions of the model inputs: bound slots become mid + half*xi_d,
// everything else is constant. Validates initial-moment consistency at the box
// corners (exact for affine inputs).
ExpandedModel expand_model(const Box& box, std::span<const SlotBinding> bindings,
                           const ScalarModelTemplate& tmpl, const PCEBasis& basis);

// RK4 on the Galerkin-projected moment closure.
ExpandedState integrate_expanded(const ExpandedModel& em, const PCEBasis& basis,
                                 double t_final, double dt);

// Range enclosure of the mean and variance polynomials. The variance polynomial is
// formed in the monomial basis as m2 - m1*m1 (exact square, degree 2p) before
// bounding, so the subtraction does not suffer interval dependence. A variance
// interval entirely below -1e-10 raises variance_error; a slightly negative lower
// bound is clamped to zero and flagged.
GaussianBox bound_moments(const ExpandedState& state, const PCEBasis& basis,
                          int subdivision = 1);

GaussianBox propagate_box(const Box& box, std::span<const SlotBinding> bindings,
                          const ScalarModelTemplate& tmpl, const PCEBasis& basis,
                          const PropagationSettings& settings);

}  // namespace dsuq

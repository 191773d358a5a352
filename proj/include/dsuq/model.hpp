#pragma once

#include <variant>
#include <vector>

#include "dsuq/ds_structure.hpp"
#include "dsuq/propagate.hpp"

namespace dsuq {

// A model input: either known exactly or described by interval evidence.
using EpistemicParam = std::variant<double, IntervalDS>;

struct EpistemicModel {
  std::vector<EpistemicParam> alpha;  // alpha[i] multiplies x^{i+1} in the drift
  EpistemicParam q;                   // noise amplitude
  bool raw_moments = true;            // initial pair meaning, as in ScalarModelTemplate
  EpistemicParam init_a;              // m1_0 or mean
  EpistemicParam init_b;              // m2_0 or variance
};

// Deterministic split of a model into evidence factors (in declaration order:
// drift coefficients, then q, then the two initial entries) plus the scalar
// template for everything else. Both the chaos path and the Monte Carlo path use
// this enumeration, so their dimension ordering always agrees.
struct CompiledModel {
  std::vector<IntervalDS> factors;
  std::vector<SlotBinding> bindings;
  ScalarModelTemplate tmpl;
};

CompiledModel compile_model(const EpistemicModel& model);

}  // namespace dsuq

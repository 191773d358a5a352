#include "dsuq/model.hpp"

#include <stdexcept>

namespace dsuq {
namespace {

// Appends the parameter as a factor when it carries evidence; returns the scalar
// to put in the template otherwise (0 for evidence slots, never read).
double take(const EpistemicParam& p, ModelSlot slot, int index, CompiledModel& out) {
  if (const double* s = std::get_if<double>(&p)) return *s;
  out.factors.push_back(std::get<IntervalDS>(p));
  out.bindings.push_back({slot, index});
  return 0.0;
}

void require_nonnegative(const EpistemicParam& p, const char* what) {
  if (const double* s = std::get_if<double>(&p)) {
    if (*s < 0.0) throw std::invalid_argument(std::string(what) + " must be >= 0");
    return;
  }
  for (const auto& it : std::get<IntervalDS>(p))
    if (it.focal.lo() < 0.0)
      throw std::invalid_argument(std::string(what) + " must be >= 0 on every focal interval");
}

}  // namespace

CompiledModel compile_model(const EpistemicModel& model) {
  if (model.alpha.empty()) throw std::invalid_argument("drift needs at least one coefficient");
  require_nonnegative(model.q, "noise amplitude");
  if (!model.raw_moments) require_nonnegative(model.init_b, "initial variance");

  CompiledModel out;
  out.tmpl.raw_moments = model.raw_moments;
  out.tmpl.alpha.reserve(model.alpha.size());
  for (std::size_t i = 0; i < model.alpha.size(); ++i)
    out.tmpl.alpha.push_back(
        take(model.alpha[i], ModelSlot::DriftCoeff, static_cast<int>(i), out));
  out.tmpl.q = take(model.q, ModelSlot::NoiseAmplitude, 0, out);
  out.tmpl.init_a = take(model.init_a,
                         model.raw_moments ? ModelSlot::InitialM1 : ModelSlot::InitialMean, 0, out);
  out.tmpl.init_b =
      take(model.init_b, model.raw_moments ? ModelSlot::InitialM2 : ModelSlot::InitialVariance, 0,
           out);
  return out;
}

}  // namespace dsuq

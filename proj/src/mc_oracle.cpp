#include "dsuq/mc_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <stdexcept>

#include "dsuq/gauss_pbox.hpp"
#include "dsuq/moment_dynamics.hpp"
#include "dsuq/rng.hpp"

namespace dsuq {

std::size_t pignistic_focal_index(const IntervalDS& ds, double u_select) {
  double acc = 0.0;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    acc += ds[i].mass;
    if (u_select < acc) return i;
  }
  return ds.size() - 1;  // u landed in the roundoff tail
}

double sample_pignistic(const IntervalDS& ds, double u_select, double u_within) {
  const Interval& f = ds[pignistic_focal_index(ds, u_select)].focal;
  return f.lo() + u_within * f.width();
}

namespace {

double draw_param(const EpistemicParam& p, std::uint64_t seed, std::uint64_t sample,
                  std::uint64_t param_id) {
  if (const double* s = std::get_if<double>(&p)) return *s;
  const auto& ds = std::get<IntervalDS>(p);
  return sample_pignistic(ds, rng::uniform01(seed, sample, 2 * param_id),
                          rng::uniform01(seed, sample, 2 * param_id + 1));
}

MomentSample one_sample(const EpistemicModel& model, double t_final, const McRunSettings& cfg,
                        std::uint64_t i) {
  const std::uint64_t n = model.alpha.size();
  std::vector<double> alpha(n);
  for (std::uint64_t j = 0; j < n; ++j) alpha[j] = draw_param(model.alpha[j], cfg.seed, i, j);
  const double q = draw_param(model.q, cfg.seed, i, n);
  const double ia = draw_param(model.init_a, cfg.seed, i, n + 1);
  const double ib = draw_param(model.init_b, cfg.seed, i, n + 2);
  const double m1_0 = ia;  // mean and first raw moment coincide
  const double m2_0 = model.raw_moments ? ib : ib + ia * ia;
  const double q_sq = q * q;

  const MomentState end =
      (n == 1 && alpha[0] != 0.0)
          ? linear_exact(alpha[0], q_sq, m1_0, m2_0, t_final)
          : integrate_moments(PolynomialDriftModel(alpha, q_sq, MomentState(m1_0, m2_0)),
                              t_final, cfg.dt);
  return {end.m1(), std::max(end.variance(), 0.0)};
}

}  // namespace

std::vector<MomentSample> sample_moments(const EpistemicModel& model, double t_final,
                                         const McRunSettings& cfg) {
  if (cfg.samples == 0) throw std::invalid_argument("sample count must be >= 1");
  std::vector<MomentSample> out(cfg.samples);
  std::exception_ptr failure = nullptr;
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(cfg.samples); ++i) {
    try {
      out[static_cast<std::size_t>(i)] =
          one_sample(model, t_final, cfg, static_cast<std::uint64_t>(i));
    } catch (...) {
#pragma omp critical
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

std::vector<MomentSample> sample_moments_serial(const EpistemicModel& model, double t_final,
                                                const McRunSettings& cfg) {
  if (cfg.samples == 0) throw std::invalid_argument("sample count must be >= 1");
  std::vector<MomentSample> out(cfg.samples);
  for (std::size_t i = 0; i < cfg.samples; ++i) out[i] = one_sample(model, t_final, cfg, i);
  return out;
}

std::vector<double> conditional_from(std::span<const MomentSample> moments, double x_f) {
  std::vector<double> p(moments.size());
  for (std::size_t i = 0; i < moments.size(); ++i)
    p[i] = normal_cdf(x_f, moments[i].m1, moments[i].var);
  return p;
}

std::vector<double> conditional_probabilities(const EpistemicModel& model, double t_final,
                                              double x_f, const McRunSettings& cfg) {
  return conditional_from(sample_moments(model, t_final, cfg), x_f);
}

std::vector<double> conditional_probabilities_serial(const EpistemicModel& model,
                                                     double t_final, double x_f,
                                                     const McRunSettings& cfg) {
  return conditional_from(sample_moments_serial(model, t_final, cfg), x_f);
}

McEstimate estimate_from(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("no samples");
  double sum = 0.0;
  for (double v : values) sum += v;  // fixed order: independent of thread count
  const double mean = sum / static_cast<double>(values.size());
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  const double se = values.size() > 1
                        ? std::sqrt(ss / static_cast<double>(values.size() - 1)) /
                              std::sqrt(static_cast<double>(values.size()))
                        : 0.0;
  return {mean, se, values.size()};
}

McEstimate estimate_total_probability(const EpistemicModel& model, double t_final, double x_f,
                                      const McRunSettings& cfg) {
  return estimate_from(conditional_probabilities(model, t_final, x_f, cfg));
}

McEstimate estimate_total_probability_serial(const EpistemicModel& model, double t_final,
                                             double x_f, const McRunSettings& cfg) {
  return estimate_from(conditional_probabilities_serial(model, t_final, x_f, cfg));
}

Histogram probability_histogram(std::span<const double> values, std::size_t bins) {
  if (bins == 0) throw std::invalid_argument("histogram needs at least one bin");
  if (values.empty()) throw std::invalid_argument("no samples");
  double hi = 0.0;
  for (double v : values) hi = std::max(hi, v);
  if (hi <= 0.0) hi = 1.0;  // all-zero samples: keep a well-formed axis

  Histogram h;
  h.edges.resize(bins + 1);
  for (std::size_t i = 0; i <= bins; ++i)
    h.edges[i] = hi * static_cast<double>(i) / static_cast<double>(bins);
  h.counts.assign(bins, 0);
  for (double v : values) {
    auto k = static_cast<std::size_t>(v / hi * static_cast<double>(bins));
    if (k >= bins) k = bins - 1;  // the max lands in the last bin
    ++h.counts[k];
  }
  return h;
}

}  // namespace dsuq

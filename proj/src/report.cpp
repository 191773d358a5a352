#include "dsuq/report.hpp"

#include <cstdio>
#include <exception>
#include <fstream>
#include <stdexcept>
#include <string>
#include <utility>

#include "dsuq/errors.hpp"
#include "dsuq/version.hpp"

namespace dsuq {
namespace {

using nlohmann::ordered_json;

GaussPBoxSet propagate_all(const CompiledModel& cm, const AnalysisConfig& cfg) {
  if (cm.factors.empty()) {
    // No evidence anywhere: single exact Gaussian, no chaos machinery.
    const double m1_0 = cm.tmpl.init_a;
    const double m2_0 =
        cm.tmpl.raw_moments ? cm.tmpl.init_b : cm.tmpl.init_b + cm.tmpl.init_a * cm.tmpl.init_a;
    const PolynomialDriftModel model(cm.tmpl.alpha, cm.tmpl.q * cm.tmpl.q,
                                     MomentState(m1_0, m2_0));
    const MomentState end = integrate_moments(model, cfg.t_final, cfg.dt);
    const double var = std::max(end.variance(), 0.0);
    return GaussPBoxSet({{GaussianBox{Interval(end.m1(), end.m1()), Interval(var, var), false},
                          1.0}});
  }

  const DSStructure<Box> joint = convolve_independent(cm.factors);
  const PCEBasis basis =
      PCEBasis::build(static_cast<int>(cm.factors.size()), cfg.pce_order);
  const PropagationSettings ps{cfg.t_final, cfg.dt, cfg.subdivision};

  std::vector<GaussianBox> boxes(joint.size(),
                                 GaussianBox{Interval(0, 0), Interval(0, 0), false});
  std::exception_ptr failure = nullptr;
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(joint.size()); ++i) {
    try {
      boxes[static_cast<std::size_t>(i)] =
          propagate_box(joint[static_cast<std::size_t>(i)].focal, cm.bindings, cm.tmpl, basis,
                        ps);
    } catch (...) {
#pragma omp critical
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<FocalElement<GaussianBox>> items;
  items.reserve(joint.size());
  for (std::size_t i = 0; i < joint.size(); ++i) items.push_back({boxes[i], joint[i].mass});
  return GaussPBoxSet(std::move(items));
}

std::vector<double> explicit_grid(const GridSpec& gs, const GaussPBoxSet& set) {
  if (!gs.lo) return default_grid(set, gs.points);
  std::vector<double> g(gs.points);
  for (std::size_t i = 0; i < gs.points; ++i)
    g[i] = *gs.lo + (*gs.hi - *gs.lo) * static_cast<double>(i) /
                        static_cast<double>(gs.points - 1);
  return g;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void atomic_write(const std::filesystem::path& path, const std::string& content) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open \"" + tmp.string() + "\" for writing");
    out << content;
    if (!out.flush()) throw std::runtime_error("write failed for \"" + tmp.string() + "\"");
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace

Report run_analysis(const AnalysisConfig& cfg) {
  const CompiledModel cm = compile_model(cfg.model);
  GaussPBoxSet moments = propagate_all(cm, cfg);

  std::vector<ThresholdBlock> thresholds;
  thresholds.reserve(cfg.thresholds.size());
  for (double x_f : cfg.thresholds) {
    IntervalDS slice = slice_at(moments, x_f);
    const double p_bet = pignistic_expectation(slice);
    const double ig = ignorance_integral(slice);
    const Interval sup = support(slice);
    const double nd = sup.degenerate() ? 0.0 : ig / sup.width();
    thresholds.push_back({x_f, std::move(slice), p_bet, ig, nd, std::nullopt, std::nullopt});
  }

  if (cfg.mc.enabled && !thresholds.empty()) {
    const McRunSettings ms{cfg.mc.samples, cfg.mc.seed, cfg.dt};
    const auto samples = sample_moments(cfg.model, cfg.t_final, ms);
    for (auto& tb : thresholds) {
      const auto p = conditional_from(samples, tb.x_f);
      tb.mc = estimate_from(p);
      tb.mc_histogram = probability_histogram(p, cfg.mc.histogram_bins);
    }
  }

  std::optional<CurveSet> curves;
  if (cfg.grid) {
    CurveSet cs{explicit_grid(*cfg.grid, moments), {}, {}, {}, {}};
    cs.cdf = pignistic_cdf(moments, cs.grid);
    cs.envelopes.reserve(moments.size());
    for (const auto& it : moments) {
      std::vector<double> lo(cs.grid.size()), hi(cs.grid.size());
      for (std::size_t i = 0; i < cs.grid.size(); ++i)
        std::tie(lo[i], hi[i]) = envelope_eval(it.focal, cs.grid[i]);
      cs.envelopes.emplace_back(std::move(lo), std::move(hi));
    }
    cs.ignorance = ignorance_curve(moments, cs.grid);
    cs.niigf = niigf(moments, cs.grid, cs.cdf, cfg.niigf_percentile);
    curves = std::move(cs);
  }

  return Report{cfg, std::move(moments), std::move(thresholds), std::move(curves)};
}

nlohmann::ordered_json report_to_json(const Report& r) {
  ordered_json j;
  j["tool"] = {{"name", kToolName}, {"version", kVersion}};
  j["config"] = config_to_json(r.config);

  j["moments"] = ordered_json::array();
  for (const auto& it : r.moments.items())
    j["moments"].push_back({{"mass", it.mass},
                            {"mu", {{"lo", it.focal.mu.lo()}, {"hi", it.focal.mu.hi()}}},
                            {"sigma_sq",
                             {{"lo", it.focal.sigma_sq.lo()}, {"hi", it.focal.sigma_sq.hi()}}},
                            {"sigma_sq_clamped", it.focal.sigma_clamped}});

  j["thresholds"] = ordered_json::array();
  for (const auto& tb : r.thresholds) {
    ordered_json t;
    t["x_f"] = tb.x_f;
    t["p_bet"] = tb.p_bet;
    t["ignorance"] = tb.ignorance;
    t["nidi"] = tb.nidi;
    t["slice"] = ordered_json::array();
    for (const auto& it : tb.slice.items())
      t["slice"].push_back(
          {{"lo", it.focal.lo()}, {"hi", it.focal.hi()}, {"mass", it.mass}});
    if (tb.mc)
      t["mc"] = {{"estimate", tb.mc->estimate},
                 {"std_error", tb.mc->std_error},
                 {"samples", tb.mc->samples}};
    else
      t["mc"] = nullptr;
    j["thresholds"].push_back(std::move(t));
  }

  if (r.curves) {
    j["grid"] = {{"points", r.curves->grid.size()},
                 {"lo", r.curves->grid.front()},
                 {"hi", r.curves->grid.back()}};
    j["niigf"] = {{"value", r.curves->niigf.value},
                  {"x_lo", r.curves->niigf.x_lo},
                  {"x_hi", r.curves->niigf.x_hi},
                  {"percentile", r.curves->niigf.percentile},
                  {"points", r.curves->niigf.points}};
  } else {
    j["grid"] = nullptr;
    j["niigf"] = nullptr;
  }
  return j;
}

std::vector<std::filesystem::path> emit(const Report& r, const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);

  // Fixed names so the report can list every artifact it ships with.
  std::vector<std::string> names;
  if (r.curves) {
    names.emplace_back("cdf.csv");
    names.emplace_back("ignorance.csv");
    for (std::size_t i = 1; i <= r.moments.size(); ++i)
      names.push_back("envelope_" + std::to_string(i) + ".csv");
  }
  for (std::size_t k = 1; k <= r.thresholds.size(); ++k)
    if (r.thresholds[k - 1].mc_histogram)
      names.push_back("mc_histogram_" + std::to_string(k) + ".csv");

  ordered_json j = report_to_json(r);
  j["files"] = names;

  std::vector<std::filesystem::path> written;
  atomic_write(out_dir / "report.json", j.dump(2) + "\n");
  written.push_back(out_dir / "report.json");

  if (r.curves) {
    const auto& cs = *r.curves;
    {
      std::string s = "x,p_bet\n";
      for (std::size_t i = 0; i < cs.grid.size(); ++i)
        s += fmt(cs.grid[i]) + "," + fmt(cs.cdf[i]) + "\n";
      atomic_write(out_dir / "cdf.csv", s);
      written.push_back(out_dir / "cdf.csv");
    }
    {
      std::string s = "x,ignorance,nidi\n";
      for (std::size_t i = 0; i < cs.grid.size(); ++i)
        s += fmt(cs.grid[i]) + "," + fmt(cs.ignorance.igf[i]) + "," +
             fmt(cs.ignorance.nidi[i]) + "\n";
      atomic_write(out_dir / "ignorance.csv", s);
      written.push_back(out_dir / "ignorance.csv");
    }
    for (std::size_t e = 0; e < cs.envelopes.size(); ++e) {
      std::string s = "x,lower,upper\n";
      for (std::size_t i = 0; i < cs.grid.size(); ++i)
        s += fmt(cs.grid[i]) + "," + fmt(cs.envelopes[e].first[i]) + "," +
             fmt(cs.envelopes[e].second[i]) + "\n";
      const auto path = out_dir / ("envelope_" + std::to_string(e + 1) + ".csv");
      atomic_write(path, s);
      written.push_back(path);
    }
  }

  for (std::size_t k = 0; k < r.thresholds.size(); ++k) {
    if (!r.thresholds[k].mc_histogram) continue;
    const auto& h = *r.thresholds[k].mc_histogram;
    std::string s = "bin_lo,bin_hi,count\n";
    for (std::size_t b = 0; b < h.counts.size(); ++b)
      s += fmt(h.edges[b]) + "," + fmt(h.edges[b + 1]) + "," + std::to_string(h.counts[b]) +
           "\n";
    const auto path = out_dir / ("mc_histogram_" + std::to_string(k + 1) + ".csv");
    atomic_write(path, s);
    written.push_back(path);
  }
  return written;
}

}  // namespace dsuq

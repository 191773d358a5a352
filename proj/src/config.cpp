#include "dsuq/config.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "dsuq/errors.hpp"

namespace dsuq {
namespace {

using nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& where, const std::string& why) {
  throw config_error("config: " + where + ": " + why);
}

void expect_keys(const ordered_json& j, const std::string& where,
                 const std::set<std::string>& allowed) {
  for (const auto& [key, _] : j.items())
    if (!allowed.contains(key)) fail(where, "unknown key \"" + key + "\"");
}

double number_at(const ordered_json& j, const std::string& where) {
  if (!j.is_number()) fail(where, "expected a number");
  return j.get<double>();
}

double field_number(const ordered_json& j, const std::string& where, const std::string& key) {
  if (!j.contains(key)) fail(where, "missing \"" + key + "\"");
  return number_at(j.at(key), where + "." + key);
}

// number | {"interval": {...}} | {"ds": [{lo,hi,mass}...]}
EpistemicParam parse_entry(const ordered_json& j, const std::string& where) {
  if (j.is_number()) return j.get<double>();
  if (!j.is_object()) fail(where, "expected a number, an interval, or a ds list");
  try {
    if (j.contains("interval")) {
      expect_keys(j, where, {"interval"});
      const auto& iv = j.at("interval");
      expect_keys(iv, where + ".interval", {"lo", "hi"});
      return IntervalDS({{Interval(field_number(iv, where + ".interval", "lo"),
                                   field_number(iv, where + ".interval", "hi")),
                          1.0}});
    }
    if (j.contains("ds")) {
      expect_keys(j, where, {"ds"});
      const auto& list = j.at("ds");
      if (!list.is_array() || list.empty()) fail(where + ".ds", "expected a non-empty array");
      std::vector<FocalElement<Interval>> items;
      for (std::size_t i = 0; i < list.size(); ++i) {
        const std::string at = where + ".ds[" + std::to_string(i) + "]";
        const auto& f = list.at(i);
        if (!f.is_object()) fail(at, "expected an object");
        expect_keys(f, at, {"lo", "hi", "mass"});
        items.push_back({Interval(field_number(f, at, "lo"), field_number(f, at, "hi")),
                         field_number(f, at, "mass")});
      }
      return IntervalDS(std::move(items));
    }
  } catch (const config_error&) {
    throw;
  } catch (const std::exception& e) {
    fail(where, e.what());
  }
  fail(where, "expected a number, an interval, or a ds list");
}

EpistemicModel parse_model(const ordered_json& j) {
  if (!j.is_object()) fail("model", "expected an object");
  expect_keys(j, "model", {"alpha", "q", "initial"});
  EpistemicModel m;

  if (!j.contains("alpha") || !j.at("alpha").is_array() || j.at("alpha").empty())
    fail("model.alpha", "expected a non-empty array of drift coefficients");
  for (std::size_t i = 0; i < j.at("alpha").size(); ++i)
    m.alpha.push_back(
        parse_entry(j.at("alpha").at(i), "model.alpha[" + std::to_string(i) + "]"));

  if (!j.contains("q")) fail("model.q", "missing");
  m.q = parse_entry(j.at("q"), "model.q");

  if (!j.contains("initial") || !j.at("initial").is_object())
    fail("model.initial", "expected an object");
  const auto& init = j.at("initial");
  if (!init.contains("kind") || !init.at("kind").is_string())
    fail("model.initial.kind", "expected \"raw\" or \"mean_variance\"");
  const std::string kind = init.at("kind").get<std::string>();
  if (kind == "raw") {
    expect_keys(init, "model.initial", {"kind", "m1", "m2"});
    if (!init.contains("m1") || !init.contains("m2"))
      fail("model.initial", "raw form needs \"m1\" and \"m2\"");
    m.raw_moments = true;
    m.init_a = parse_entry(init.at("m1"), "model.initial.m1");
    m.init_b = parse_entry(init.at("m2"), "model.initial.m2");
  } else if (kind == "mean_variance") {
    expect_keys(init, "model.initial", {"kind", "mean", "variance"});
    if (!init.contains("mean") || !init.contains("variance"))
      fail("model.initial", "mean_variance form needs \"mean\" and \"variance\"");
    m.raw_moments = false;
    m.init_a = parse_entry(init.at("mean"), "model.initial.mean");
    m.init_b = parse_entry(init.at("variance"), "model.initial.variance");
  } else {
    fail("model.initial.kind", "expected \"raw\" or \"mean_variance\"");
  }
  return m;
}

ordered_json entry_to_json(const EpistemicParam& p) {
  if (const double* s = std::get_if<double>(&p)) return *s;
  ordered_json list = ordered_json::array();
  for (const auto& it : std::get<IntervalDS>(p))
    list.push_back({{"lo", it.focal.lo()}, {"hi", it.focal.hi()}, {"mass", it.mass}});
  return ordered_json{{"ds", std::move(list)}};
}

}  // namespace

AnalysisConfig parse_config(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const std::exception& e) {
    throw config_error(std::string("config: invalid JSON: ") + e.what());
  }
  if (!j.is_object()) fail("top level", "expected an object");
  expect_keys(j, "top level",
              {"model", "t_final", "dt", "pce_order", "subdivision", "niigf_percentile",
               "thresholds", "grid", "mc", "output_dir"});

  AnalysisConfig c;
  if (!j.contains("model")) fail("model", "missing");
  c.model = parse_model(j.at("model"));

  c.t_final = field_number(j, "top level", "t_final");
  if (!(c.t_final >= 0.0)) fail("t_final", "must be >= 0");
  if (j.contains("dt")) {
    c.dt = number_at(j.at("dt"), "dt");
    if (!(c.dt > 0.0)) fail("dt", "must be > 0");
  }
  if (j.contains("pce_order")) {
    if (!j.at("pce_order").is_number_integer()) fail("pce_order", "expected an integer");
    c.pce_order = j.at("pce_order").get<int>();
    if (c.pce_order < 1 || c.pce_order > kMaxPceOrder)
      fail("pce_order", "must be in [1, " + std::to_string(kMaxPceOrder) + "]");
  }
  if (j.contains("subdivision")) {
    if (!j.at("subdivision").is_number_integer()) fail("subdivision", "expected an integer");
    c.subdivision = j.at("subdivision").get<int>();
    if (c.subdivision < 1) fail("subdivision", "must be >= 1");
  }
  if (j.contains("niigf_percentile")) {
    c.niigf_percentile = number_at(j.at("niigf_percentile"), "niigf_percentile");
    if (!(c.niigf_percentile > 0.0 && c.niigf_percentile < 0.5))
      fail("niigf_percentile", "must lie in (0, 0.5)");
  }
  if (j.contains("thresholds")) {
    if (!j.at("thresholds").is_array()) fail("thresholds", "expected an array");
    for (std::size_t i = 0; i < j.at("thresholds").size(); ++i)
      c.thresholds.push_back(
          number_at(j.at("thresholds").at(i), "thresholds[" + std::to_string(i) + "]"));
  }
  if (j.contains("grid")) {
    const auto& g = j.at("grid");
    if (!g.is_object()) fail("grid", "expected an object");
    expect_keys(g, "grid", {"points", "lo", "hi"});
    GridSpec gs;
    if (g.contains("points")) {
      if (!g.at("points").is_number_integer() || g.at("points").get<long long>() < 2)
        fail("grid.points", "expected an integer >= 2");
      gs.points = g.at("points").get<std::size_t>();
    }
    if (g.contains("lo") != g.contains("hi"))
      fail("grid", "\"lo\" and \"hi\" must be given together");
    if (g.contains("lo")) {
      gs.lo = number_at(g.at("lo"), "grid.lo");
      gs.hi = number_at(g.at("hi"), "grid.hi");
      if (!(*gs.lo < *gs.hi)) fail("grid", "\"lo\" must be < \"hi\"");
    }
    c.grid = gs;
  }
  if (c.thresholds.empty() && !c.grid)
    fail("top level", "nothing to compute: provide thresholds and/or a grid");
  if (j.contains("mc")) {
    const auto& m = j.at("mc");
    if (!m.is_object()) fail("mc", "expected an object");
    expect_keys(m, "mc", {"enabled", "samples", "seed", "histogram_bins"});
    if (m.contains("enabled")) {
      if (!m.at("enabled").is_boolean()) fail("mc.enabled", "expected a boolean");
      c.mc.enabled = m.at("enabled").get<bool>();
    }
    if (m.contains("samples")) {
      if (!m.at("samples").is_number_integer() || m.at("samples").get<long long>() < 1)
        fail("mc.samples", "expected an integer >= 1");
      c.mc.samples = m.at("samples").get<std::size_t>();
    }
    if (m.contains("seed")) {
      if (!m.at("seed").is_number_integer()) fail("mc.seed", "expected an integer");
      c.mc.seed = m.at("seed").get<std::uint64_t>();
    }
    if (m.contains("histogram_bins")) {
      if (!m.at("histogram_bins").is_number_integer() ||
          m.at("histogram_bins").get<long long>() < 1)
        fail("mc.histogram_bins", "expected an integer >= 1");
      c.mc.histogram_bins = m.at("histogram_bins").get<std::size_t>();
    }
  }
  if (j.contains("output_dir")) {
    if (!j.at("output_dir").is_string()) fail("output_dir", "expected a string");
    c.output_dir = j.at("output_dir").get<std::string>();
  }

  try {
    compile_model(c.model);  // q >= 0, variance >= 0, non-empty drift
  } catch (const std::exception& e) {
    fail("model", e.what());
  }
  return c;
}

AnalysisConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("config: cannot open \"" + path + "\"");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

nlohmann::ordered_json config_to_json(const AnalysisConfig& c) {
  ordered_json model;
  model["alpha"] = ordered_json::array();
  for (const auto& a : c.model.alpha) model["alpha"].push_back(entry_to_json(a));
  model["q"] = entry_to_json(c.model.q);
  if (c.model.raw_moments)
    model["initial"] = {{"kind", "raw"},
                        {"m1", entry_to_json(c.model.init_a)},
                        {"m2", entry_to_json(c.model.init_b)}};
  else
    model["initial"] = {{"kind", "mean_variance"},
                        {"mean", entry_to_json(c.model.init_a)},
                        {"variance", entry_to_json(c.model.init_b)}};

  ordered_json j;
  j["model"] = std::move(model);
  j["t_final"] = c.t_final;
  j["dt"] = c.dt;
  j["pce_order"] = c.pce_order;
  j["subdivision"] = c.subdivision;
  j["niigf_percentile"] = c.niigf_percentile;
  j["thresholds"] = c.thresholds;
  if (c.grid) {
    ordered_json g;
    g["points"] = c.grid->points;
    if (c.grid->lo) {
      g["lo"] = *c.grid->lo;
      g["hi"] = *c.grid->hi;
    }
    j["grid"] = std::move(g);
  }
  j["mc"] = {{"enabled", c.mc.enabled},
             {"samples", c.mc.samples},
             {"seed", c.mc.seed},
             {"histogram_bins", c.mc.histogram_bins}};
  j["output_dir"] = c.output_dir;
  return j;
}

}  // namespace dsuq

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "dsuq/gauss_pbox.hpp"
#include "dsuq/mc_oracle.hpp"
#include "dsuq/report.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void row(const char* name, double serial_s, double parallel_s, bool identical) {
  std::printf("%-24s %10.3f ms %10.3f ms   x%-6.2f %s\n", name, serial_s * 1e3,
              parallel_s * 1e3, serial_s / parallel_s, identical ? "bit-identical" : "DIFFERS");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Serial vs OpenMP kernel comparison", "dsuq_bench"};
  std::size_t samples = 2'000'000;
  app.add_option("--samples", samples, "Monte Carlo samples");
  std::size_t points = 20'001;
  app.add_option("--points", points, "Curve grid points");
  CLI11_PARSE(app, argc, argv);

#ifdef _OPENMP
  std::printf("OpenMP: %d thread(s)\n", omp_get_max_threads());
#else
  std::printf("OpenMP: off (serial build)\n");
#endif

  // Two-factor linear demo model: evidence on the decay rate and noise amplitude.
  dsuq::EpistemicModel model;
  model.alpha = {dsuq::IntervalDS({{dsuq::Interval(0.86, 0.90), 0.2},
                                   {dsuq::Interval(0.89, 0.96), 0.8}})};
  model.q = dsuq::IntervalDS({{dsuq::Interval(0.2, 0.3), 0.6},
                              {dsuq::Interval(0.3, 0.4), 0.4}});
  model.raw_moments = true;
  model.init_a = 1.1;
  model.init_b = 2.42;
  const double t_final = 2.0;

  const dsuq::McRunSettings mc{samples, 7, 0.005};
  auto t0 = Clock::now();
  const auto ser = dsuq::sample_moments_serial(model, t_final, mc);
  const double mc_serial = seconds_since(t0);
  t0 = Clock::now();
  const auto par = dsuq::sample_moments(model, t_final, mc);
  const double mc_parallel = seconds_since(t0);
  bool same = ser.size() == par.size();
  for (std::size_t i = 0; same && i < ser.size(); ++i)
    same = ser[i].m1 == par[i].m1 && ser[i].var == par[i].var;
  row("mc sample_moments", mc_serial, mc_parallel, same);

  // Propagated boxes for the curve kernels.
  dsuq::AnalysisConfig cfg;
  cfg.model = model;
  cfg.t_final = t_final;
  cfg.thresholds = {-0.5};
  cfg.mc.enabled = false;
  const dsuq::Report rep = dsuq::run_analysis(cfg);
  const auto grid = dsuq::default_grid(rep.moments, points);

  t0 = Clock::now();
  const auto cdf_s = dsuq::pignistic_cdf_serial(rep.moments, grid);
  const double cdf_serial = seconds_since(t0);
  t0 = Clock::now();
  const auto cdf_p = dsuq::pignistic_cdf(rep.moments, grid);
  const double cdf_parallel = seconds_since(t0);
  row("pignistic_cdf", cdf_serial, cdf_parallel, cdf_s == cdf_p);

  t0 = Clock::now();
  const auto ig_s = dsuq::ignorance_curve_serial(rep.moments, grid);
  const double ig_serial = seconds_since(t0);
  t0 = Clock::now();
  const auto ig_p = dsuq::ignorance_curve(rep.moments, grid);
  const double ig_parallel = seconds_since(t0);
  row("ignorance_curve", ig_serial, ig_parallel,
      ig_s.igf == ig_p.igf && ig_s.nidi == ig_p.nidi);

  return 0;
}

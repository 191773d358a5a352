#include "dsuq/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <exception>
#include <string>

#include "dsuq/errors.hpp"
#include "dsuq/report.hpp"
#include "dsuq/version.hpp"

namespace dsuq {
namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

void print_summary(const Report& r, const std::vector<std::filesystem::path>& files,
                   std::ostream& out) {
  out << kToolName << ' ' << kVersion << '\n';
  out << "propagated " << r.moments.size() << " joint box(es) to t = " << r.config.t_final
      << '\n';
  for (const auto& it : r.moments.items()) {
    out << "  mass " << it.mass << ": mu = [" << it.focal.mu.lo() << ", " << it.focal.mu.hi()
        << "], sigma^2 = [" << it.focal.sigma_sq.lo() << ", " << it.focal.sigma_sq.hi() << "]";
    if (it.focal.sigma_clamped) out << " (lower variance clamped at 0)";
    out << '\n';
  }
  for (const auto& tb : r.thresholds) {
    out << "threshold x_f = " << tb.x_f << ": P_Bet = " << tb.p_bet
        << ", ignorance = " << tb.ignorance << ", nidi = " << tb.nidi;
    if (tb.mc)
      out << ", mc = " << tb.mc->estimate << " +/- " << tb.mc->std_error << " ("
          << tb.mc->samples << " samples)";
    out << '\n';
  }
  if (r.curves)
    out << "niigf = " << r.curves->niigf.value << " over [" << r.curves->niigf.x_lo << ", "
        << r.curves->niigf.x_hi << "] at percentile " << r.curves->niigf.percentile << '\n';
  for (const auto& f : files) out << "wrote " << f.string() << '\n';
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Evidence-theoretic uncertainty propagation for scalar polynomial SDEs",
               kToolName};
  app.set_version_flag("--version", std::string(kToolName) + " " + kVersion);
  app.require_subcommand(1);

  auto* analyze = app.add_subcommand("analyze", "Run an analysis described by a JSON config");
  std::string config_path;
  analyze->add_option("config", config_path, "Path to the JSON config")->required();
  std::string out_dir;
  analyze->add_option("--out", out_dir, "Output directory (overrides the config)");
  int pce_order = 0;
  analyze->add_option("--pce-order", pce_order, "Chaos expansion order override");
  double dt = 0.0;
  analyze->add_option("--dt", dt, "Integrator step override");
  long long mc_samples = 0;
  analyze->add_option("--mc-samples", mc_samples, "Monte Carlo sample count override");
  long long seed = -1;
  analyze->add_option("--seed", seed, "Monte Carlo seed override");
  bool no_mc = false;
  analyze->add_flag("--no-mc", no_mc, "Disable the Monte Carlo check");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion& e) {
    out << app.version() << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }

  AnalysisConfig cfg;
  try {
    cfg = load_config(config_path);
    if (!out_dir.empty()) cfg.output_dir = out_dir;
    if (analyze->count("--pce-order")) {
      if (pce_order < 1 || pce_order > kMaxPceOrder)
        throw config_error("config: pce_order override must be in [1, " +
                           std::to_string(kMaxPceOrder) + "]");
      cfg.pce_order = pce_order;
    }
    if (analyze->count("--dt")) {
      if (!(dt > 0.0)) throw config_error("config: dt override must be > 0");
      cfg.dt = dt;
    }
    if (analyze->count("--mc-samples")) {
      if (mc_samples < 1) throw config_error("config: mc-samples override must be >= 1");
      cfg.mc.samples = static_cast<std::size_t>(mc_samples);
    }
    if (analyze->count("--seed")) cfg.mc.seed = static_cast<std::uint64_t>(seed);
    if (no_mc) cfg.mc.enabled = false;
  } catch (const config_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }

  try {
    const auto t0 = std::chrono::steady_clock::now();
    const Report report = run_analysis(cfg);
    const auto files = emit(report, cfg.output_dir);
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - t0;
    print_summary(report, files, out);
    out << "elapsed: " << elapsed.count() << " s\n";  // console only, never in files
    return kExitOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumeric;
  }
}

}  // namespace dsuq

#include <doctest.h>

#include <cmath>
#include <cstddef>
#include <random>
#include <stdexcept>
#include <vector>

#include "dsuq/gauss_pbox.hpp"

using namespace dsuq;

namespace {

// Independent reference cdf (erf-based, vs the library's erfc form).
double phi_ref(double x, double mu, double sigma_sq) {
  if (sigma_sq == 0.0) return x >= mu ? 1.0 : 0.0;
  return 0.5 * (1.0 + std::erf((x - mu) / std::sqrt(2.0 * sigma_sq)));
}

GaussianBox make_box(double mu_lo, double mu_hi, double s2_lo, double s2_hi) {
  return {Interval(mu_lo, mu_hi), Interval(s2_lo, s2_hi), false};
}

// Evidence and model of the worked two-factor decay scenario.
GaussPBoxSet demo_set() {
  const IntervalDS decay({{Interval(0.86, 0.90), 0.2}, {Interval(0.89, 0.96), 0.8}});
  const IntervalDS noise({{Interval(0.2, 0.3), 0.6}, {Interval(0.3, 0.4), 0.4}});
  const std::vector<IntervalDS> factors{decay, noise};
  const DSStructure<Box> joint = convolve_independent(factors);
  const std::vector<SlotBinding> bind{{ModelSlot::DriftCoeff, 0}, {ModelSlot::NoiseAmplitude, 0}};
  ScalarModelTemplate tmpl;
  tmpl.alpha = {0.0};
  tmpl.raw_moments = true;
  tmpl.init_a = 1.1;
  tmpl.init_b = 2.42;
  const PCEBasis basis = PCEBasis::build(2, 3);
  std::vector<FocalElement<GaussianBox>> items;
  for (const auto& fe : joint)
    items.push_back({propagate_box(fe.focal, bind, tmpl, basis, {2.0, 0.005, 1}), fe.mass});
  return GaussPBoxSet(items);
}

}  // namespace

TEST_CASE("normal cdf: frozen values, step limit, validation") {
  CHECK(normal_cdf(0.0, 0.0, 1.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(normal_cdf(1.0, 0.0, 1.0) == doctest::Approx(0.8413447460685429).epsilon(1e-13));
  CHECK(normal_cdf(1.96, 0.0, 1.0) == doctest::Approx(0.9750021048517795).epsilon(1e-13));
  CHECK(normal_cdf(-2.5, 0.0, 1.0) == doctest::Approx(0.0062096653257761351).epsilon(1e-12));
  // location/scale: N(x; mu, s2) = N((x-mu)/s; 0, 1)
  CHECK(normal_cdf(3.0 + 1.96 * 0.5, 3.0, 0.25) ==
        doctest::Approx(0.9750021048517795).epsilon(1e-13));
  // complement symmetry
  for (double x : {-1.7, -0.3, 0.0, 0.9, 2.4})
    CHECK(normal_cdf(x, 0.4, 2.0) + normal_cdf(0.8 - x, 0.4, 2.0) ==
          doctest::Approx(1.0).epsilon(1e-13));
  // zero variance degenerates to the unit step with the jump counted at mu
  CHECK(normal_cdf(0.999, 1.0, 0.0) == 0.0);
  CHECK(normal_cdf(1.0, 1.0, 0.0) == 1.0);
  CHECK(normal_cdf(1.001, 1.0, 0.0) == 1.0);
  CHECK_THROWS_AS(normal_cdf(0.0, 0.0, -1e-12), std::invalid_argument);
}

TEST_CASE("envelope bounds: orientation rule against a reference cdf") {
  const GaussianBox box = make_box(0.161, 0.186, 0.046, 0.084);
  // left of both means: lower pairs the high mean with the small variance,
  // upper pairs the low mean with the large variance
  {
    const auto [lo, up] = envelope_eval(box, -0.5);
    CHECK(lo == doctest::Approx(phi_ref(-0.5, 0.186, 0.046)).epsilon(1e-13));
    CHECK(up == doctest::Approx(phi_ref(-0.5, 0.161, 0.084)).epsilon(1e-13));
  }
  // right of both means: variance roles swap
  {
    const auto [lo, up] = envelope_eval(box, 1.2);
    CHECK(lo == doctest::Approx(phi_ref(1.2, 0.186, 0.084)).epsilon(1e-13));
    CHECK(up == doctest::Approx(phi_ref(1.2, 0.161, 0.046)).epsilon(1e-13));
  }
  // between the means: both extremes sit below their reference mean
  {
    const auto [lo, up] = envelope_eval(box, 0.17);
    CHECK(lo == doctest::Approx(phi_ref(0.17, 0.186, 0.046)).epsilon(1e-13));
    CHECK(up == doctest::Approx(phi_ref(0.17, 0.161, 0.046)).epsilon(1e-13));
  }
  // a degenerate box reproduces the plain cdf
  const GaussianBox pt = make_box(0.3, 0.3, 0.7, 0.7);
  for (double x : {-2.0, 0.0, 0.3, 1.5}) {
    const auto [lo, up] = envelope_eval(pt, x);
    CHECK(lo == doctest::Approx(normal_cdf(x, 0.3, 0.7)).epsilon(1e-15));
    CHECK(up == lo);
  }
}

TEST_CASE("envelope bounds enclose every member and are attained on the box") {
  std::mt19937_64 gen(41);
  std::uniform_real_distribution<double> umu(-2.0, 2.0), us2(0.0, 2.0), ux(-5.0, 5.0);
  for (int rep = 0; rep < 200; ++rep) {
    double m1 = umu(gen), m2 = umu(gen);
    if (m2 < m1) std::swap(m1, m2);
    double v1 = us2(gen), v2 = us2(gen);
    if (v2 < v1) std::swap(v1, v2);
    if (rep % 7 == 0) v1 = 0.0;  // include the step-cdf edge
    const GaussianBox box = make_box(m1, m2, v1, v2);
    for (int k = 0; k < 5; ++k) {
      const double x = ux(gen);
      const auto [lo, up] = envelope_eval(box, x);
      CHECK(lo <= up);
      double seen_lo = 2.0, seen_hi = -1.0;
      for (int i = 0; i <= 14; ++i)
        for (int j = 0; j <= 14; ++j) {
          const double mu = m1 + (m2 - m1) * i / 14.0;
          const double s2 = v1 + (v2 - v1) * j / 14.0;
          const double v = normal_cdf(x, mu, s2);
          seen_lo = std::min(seen_lo, v);
          seen_hi = std::max(seen_hi, v);
        }
      CHECK(lo <= seen_lo + 1e-12);
      CHECK(up >= seen_hi - 1e-12);
      // both bounds are corner values, so the sampled extremes reach them
      CHECK(seen_lo <= lo + 1e-12);
      CHECK(seen_hi >= up - 1e-12);
    }
  }
}

TEST_CASE("envelope bounds are nondecreasing in the threshold") {
  const GaussianBox box = make_box(-0.4, 0.9, 0.1, 1.3);
  double prev_lo = -1.0, prev_up = -1.0;
  for (int i = 0; i <= 400; ++i) {
    const double x = -6.0 + 12.0 * i / 400.0;
    const auto [lo, up] = envelope_eval(box, x);
    CHECK(lo >= prev_lo - 1e-14);
    CHECK(up >= prev_up - 1e-14);
    CHECK(lo >= 0.0);
    CHECK(up <= 1.0);
    prev_lo = lo;
    prev_up = up;
  }
}

TEST_CASE("threshold slice: masses carried over, cdf routes agree bitwise") {
  const GaussPBoxSet set({{make_box(-0.2, 0.1, 0.5, 0.8), 0.4},
                          {make_box(0.3, 0.4, 0.2, 0.2), 0.6}});
  const auto grid = default_grid(set, 251);
  const auto pc = pignistic_cdf(set, grid);
  REQUIRE(pc.size() == grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const IntervalDS slice = slice_at(set, grid[i]);
    REQUIRE(slice.size() == 2);
    CHECK(slice[0].mass == 0.4);
    CHECK(slice[1].mass == 0.6);
    const auto [lo0, up0] = envelope_eval(set[0].focal, grid[i]);
    CHECK(slice[0].focal.lo() == lo0);
    CHECK(slice[0].focal.hi() == up0);
    CHECK(pc[i] == pignistic_expectation(slice));  // same arithmetic, same bits
  }
  // a proper cdf: monotone within [0, 1], pinned down/up at the 6-sigma ends
  for (std::size_t i = 1; i < pc.size(); ++i) CHECK(pc[i] >= pc[i - 1] - 1e-14);
  CHECK(pc.front() >= 0.0);
  CHECK(pc.front() <= 1e-8);
  CHECK(pc.back() <= 1.0);
  CHECK(pc.back() >= 1.0 - 1e-8);
}

TEST_CASE("ignorance: width identities and curve consistency") {
  // single focal: the integral is just the envelope gap
  const GaussPBoxSet one({{make_box(0.0, 0.5, 0.3, 0.9), 1.0}});
  for (double x : {-1.0, 0.2, 0.7, 2.0}) {
    const auto [lo, up] = envelope_eval(one[0].focal, x);
    CHECK(ignorance_at(one, x) == doctest::Approx(up - lo).epsilon(1e-14));
  }

  // several focals: integral of upper-minus-lower cdf equals mass-weighted widths
  const GaussPBoxSet set({{make_box(-0.2, 0.1, 0.5, 0.8), 0.25},
                          {make_box(0.3, 0.4, 0.2, 0.6), 0.35},
                          {make_box(-1.0, 1.0, 0.1, 0.1), 0.4}});
  const auto grid = default_grid(set, 201);
  const IgnoranceCurve curve = ignorance_curve(set, grid);
  REQUIRE(curve.igf.size() == grid.size());
  REQUIRE(curve.nidi.size() == grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const IntervalDS slice = slice_at(set, grid[i]);
    double expect = 0.0;
    for (const auto& fe : slice) expect += fe.mass * fe.focal.width();
    CHECK(curve.igf[i] == doctest::Approx(expect).epsilon(1e-13));
    CHECK(curve.igf[i] == ignorance_at(set, grid[i]));
    const double w = support(slice).width();
    if (w > 0.0)
      CHECK(curve.nidi[i] == doctest::Approx(curve.igf[i] / w).epsilon(1e-13));
    else
      CHECK(curve.nidi[i] == 0.0);
    CHECK(curve.nidi[i] >= 0.0);
    CHECK(curve.nidi[i] <= 1.0 + 1e-12);
  }

  // point boxes carry no ignorance anywhere
  const GaussPBoxSet crisp({{make_box(0.1, 0.1, 0.4, 0.4), 0.7},
                            {make_box(0.1, 0.1, 0.4, 0.4), 0.3}});
  const auto g2 = default_grid(crisp, 51);
  const IgnoranceCurve c2 = ignorance_curve(crisp, g2);
  for (std::size_t i = 0; i < g2.size(); ++i) {
    CHECK(c2.igf[i] == 0.0);
    CHECK(c2.nidi[i] == 0.0);
  }
}

TEST_CASE("default grid spans six sigmas around the extreme means") {
  const GaussPBoxSet set({{make_box(0.0, 1.0, 0.25, 1.0), 0.5},
                          {make_box(-2.0, -1.0, 0.04, 0.09), 0.5}});
  const auto grid = default_grid(set, 101);
  REQUIRE(grid.size() == 101);
  CHECK(grid.front() == doctest::Approx(-8.0).epsilon(1e-14));  // -2 - 6*1
  CHECK(grid.back() == doctest::Approx(7.0).epsilon(1e-14));    // 1 + 6*1
  const double h = grid[1] - grid[0];
  for (std::size_t i = 1; i < grid.size(); ++i)
    CHECK(grid[i] - grid[i - 1] == doctest::Approx(h).epsilon(1e-10));
  CHECK_THROWS_AS(default_grid(set, 1), std::invalid_argument);
}

TEST_CASE("worked decay scenario: frozen threshold diagnostics") {
  const GaussPBoxSet set = demo_set();
  REQUIRE(set.size() == 4);
  CHECK(set[0].mass == doctest::Approx(0.12).epsilon(1e-14));
  CHECK(set[1].mass == doctest::Approx(0.48).epsilon(1e-14));
  CHECK(set[2].mass == doctest::Approx(0.08).epsilon(1e-14));
  CHECK(set[3].mass == doctest::Approx(0.32).epsilon(1e-14));

  const double xf = -0.5;
  const IntervalDS slice = slice_at(set, xf);
  CHECK(slice[1].focal.lo() == doctest::Approx(0.00072968968962149473).epsilon(1e-9));
  CHECK(slice[1].focal.hi() == doctest::Approx(0.011070300076608532).epsilon(1e-9));

  const double p_bet = pignistic_expectation(slice);
  CHECK(p_bet == doctest::Approx(0.010531548400860936).epsilon(1e-9));
  CHECK(std::abs(p_bet - 0.0107) <= 5e-4);

  const double igf = ignorance_at(set, xf);
  CHECK(igf == doctest::Approx(0.015458555786103775).epsilon(1e-9));
  CHECK(std::abs(igf - 0.0156) <= 2e-3);

  CHECK(nidi(slice) == doctest::Approx(0.54619422072738832).epsilon(1e-9));

  const auto grid = default_grid(set);
  REQUIRE(grid.size() == 2001);
  CHECK(grid.front() == doctest::Approx(-1.9923769090207764).epsilon(1e-9));
  CHECK(grid.back() == doctest::Approx(2.3506172864091344).epsilon(1e-9));
}

TEST_CASE("mean ignorance over the central percentile window") {
  const GaussPBoxSet set = demo_set();
  const auto grid = default_grid(set);
  const auto cdf = pignistic_cdf(set, grid);

  const NiigfResult r = niigf(set, grid, cdf);
  CHECK(r.percentile == 0.05);
  CHECK(r.points == 1001);
  CHECK(r.x_lo == doctest::Approx(-0.28804326654397772).epsilon(1e-9));
  CHECK(r.x_hi == doctest::Approx(0.64170727385269899).epsilon(1e-9));
  CHECK(r.value == doctest::Approx(0.070097557524697263).epsilon(1e-9));

  // a denser window grid barely moves the trapezoid mean
  const NiigfResult dense = niigf(set, grid, cdf, 0.05, 5000);
  CHECK(dense.points >= 5000);
  CHECK(dense.value == doctest::Approx(r.value).epsilon(1e-4));

  // tighter central window on a set whose ignorance peaks centrally reads higher
  const NiigfResult wide = niigf(set, grid, cdf, 0.25);
  CHECK(wide.x_lo > r.x_lo);
  CHECK(wide.x_hi < r.x_hi);

  CHECK_THROWS_AS(niigf(set, grid, cdf, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(niigf(set, grid, cdf, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(niigf(set, grid, cdf, -0.1), std::invalid_argument);
  const std::vector<double> short_cdf(cdf.begin(), cdf.end() - 1);
  CHECK_THROWS_AS(niigf(set, grid, short_cdf), std::invalid_argument);

  // cdf saturated before the grid begins: the window collapses
  const GaussPBoxSet far({{make_box(-100.0, -100.0, 0.01, 0.01), 1.0}});
  const std::vector<double> g3{0.0, 1.0, 2.0};
  const auto c3 = pignistic_cdf(far, g3);
  CHECK_THROWS_AS(niigf(far, g3, c3), degenerate_support_error);

  // epistemically wide location: ignorance near one across the whole window
  const GaussPBoxSet wide_mu({{make_box(-10.0, 10.0, 1.0, 1.0), 1.0}});
  const auto g4 = default_grid(wide_mu, 801);
  const auto c4 = pignistic_cdf(wide_mu, g4);
  const NiigfResult rw = niigf(wide_mu, g4, c4);
  CHECK(rw.value >= 0.8);
  CHECK(rw.value <= 1.0 + 1e-12);
}

#include <doctest.h>

#include <algorithm>
#include <random>
#include <vector>

#include "dsuq/ds_structure.hpp"
#include "dsuq/errors.hpp"

using namespace dsuq;

namespace {

IntervalDS decay_rate_evidence() {
  return IntervalDS({{Interval(0.86, 0.90), 0.2}, {Interval(0.89, 0.96), 0.8}});
}

IntervalDS noise_evidence() {
  return IntervalDS({{Interval(0.2, 0.3), 0.6}, {Interval(0.3, 0.4), 0.4}});
}

// Independent integral oracle: midpoint sums of directly-coded cumulative curves
// over a dense uniform partition of the support.
double grid_ignorance(const IntervalDS& ds, std::size_t cells) {
  const Interval sup = support(ds);
  const double h = sup.width() / static_cast<double>(cells);
  double acc = 0.0;
  for (std::size_t i = 0; i < cells; ++i) {
    const double x = sup.lo() + (static_cast<double>(i) + 0.5) * h;
    double lo_sum = 0.0, hi_sum = 0.0;
    for (const auto& it : ds) {
      if (it.focal.hi() <= x) lo_sum += it.mass;
      if (it.focal.lo() <= x) hi_sum += it.mass;
    }
    acc += (hi_sum - lo_sum) * h;
  }
  return acc;
}

IntervalDS random_structure(std::mt19937& gen, bool allow_points) {
  std::uniform_int_distribution<int> nd(1, 6);
  std::uniform_real_distribution<double> ud(-5.0, 5.0);
  const int n = nd(gen);
  std::vector<FocalElement<Interval>> items;
  double total = 0.0;
  std::vector<double> masses;
  for (int i = 0; i < n; ++i) {
    double a = ud(gen), b = ud(gen);
    if (a > b) std::swap(a, b);
    if (!allow_points && b - a < 1e-3) b = a + 1e-3;
    const double m = std::uniform_real_distribution<double>(0.1, 1.0)(gen);
    masses.push_back(m);
    total += m;
    items.push_back({Interval(a, b), 0.0});
  }
  for (int i = 0; i < n; ++i) items[static_cast<std::size_t>(i)].mass = masses[static_cast<std::size_t>(i)] / total;
  return IntervalDS(std::move(items));
}

}  // namespace

TEST_CASE("interval construction") {
  const Interval iv(1.0, 2.5);
  CHECK(iv.lo() == 1.0);
  CHECK(iv.hi() == 2.5);
  CHECK(iv.width() == 1.5);
  CHECK(iv.mid() == doctest::Approx(1.75));
  CHECK(Interval(3.0, 3.0).degenerate());
  CHECK_THROWS_AS(Interval(2.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(Interval(0.0, std::numeric_limits<double>::infinity()),
                  std::invalid_argument);
  CHECK_THROWS_AS(Interval(std::nan(""), 1.0), std::invalid_argument);
}

TEST_CASE("mass validation accepts 1e-9 slack and rejects beyond") {
  CHECK_NOTHROW(IntervalDS({{Interval(0, 1), 0.5}, {Interval(1, 2), 0.5 + 5e-10}}));
  CHECK_THROWS_AS(IntervalDS({{Interval(0, 1), 0.5}, {Interval(1, 2), 0.5 + 2e-9}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(IntervalDS({{Interval(0, 1), 0.6}, {Interval(1, 2), 0.6}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(IntervalDS({{Interval(0, 1), 1.5}, {Interval(1, 2), -0.5}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(IntervalDS({{Interval(0, 1), 0.0}, {Interval(1, 2), 1.0}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(IntervalDS({}), std::invalid_argument);
}

TEST_CASE("cumulative belief and plausibility") {
  const IntervalDS a = decay_rate_evidence();
  CHECK(cbf(a, 0.85) == 0.0);
  CHECK(cbf(a, 0.90) == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(cbf(a, 0.95) == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(cbf(a, 0.96) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(cpf(a, 0.85) == 0.0);
  CHECK(cpf(a, 0.87) == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(cpf(a, 0.89) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(support(a) == Interval(0.86, 0.96));
}

TEST_CASE("pignistic density and expectation") {
  const IntervalDS a = decay_rate_evidence();
  CHECK(pignistic_pdf(a, 0.895) == doctest::Approx(0.2 / 0.04 + 0.8 / 0.07).epsilon(1e-12));
  CHECK(pignistic_pdf(a, 0.87) == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(pignistic_pdf(a, 0.5) == 0.0);
  CHECK(pignistic_expectation(a) == doctest::Approx(0.916).epsilon(1e-12));

  const IntervalDS with_atom({{Interval(1, 1), 0.5}, {Interval(0, 2), 0.5}});
  CHECK(pignistic_pdf(with_atom, 0.5) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK_THROWS_AS(pignistic_pdf(with_atom, 1.0), std::domain_error);
  CHECK(pignistic_expectation(with_atom) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("ignorance measure on hand-checked structures") {
  // One interval: pure ignorance.
  CHECK(nidi(IntervalDS({{Interval(-1, 3), 1.0}})) == doctest::Approx(1.0).epsilon(1e-12));
  // Two precise points: no ignorance.
  CHECK(nidi(IntervalDS({{Interval(0, 0), 0.5}, {Interval(1, 1), 0.5}})) ==
        doctest::Approx(0.0).epsilon(1e-12));
  // Two abutting unit intervals, equal mass: the gap between the cumulative curves
  // is 1/2 across the whole support, so the normalized measure is 1/2.
  CHECK(nidi(IntervalDS({{Interval(0, 1), 0.5}, {Interval(1, 2), 0.5}})) ==
        doctest::Approx(0.5).epsilon(1e-12));
  const IntervalDS q = noise_evidence();
  CHECK(ignorance_integral(q) == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(nidi(q) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK_THROWS_AS(nidi(IntervalDS({{Interval(1, 1), 1.0}})), degenerate_support_error);
}

TEST_CASE("independent combination reproduces the two-factor product") {
  const std::vector<IntervalDS> factors{decay_rate_evidence(), noise_evidence()};
  const DSStructure<Box> joint = convolve_independent(factors);
  REQUIRE(joint.size() == 4);
  // first factor varies fastest
  CHECK(joint[0].mass == doctest::Approx(0.12).epsilon(1e-15));
  CHECK(joint[1].mass == doctest::Approx(0.48).epsilon(1e-15));
  CHECK(joint[2].mass == doctest::Approx(0.08).epsilon(1e-15));
  CHECK(joint[3].mass == doctest::Approx(0.32).epsilon(1e-15));
  CHECK(joint[1].focal[0] == Interval(0.89, 0.96));
  CHECK(joint[1].focal[1] == Interval(0.2, 0.3));
  CHECK(joint[2].focal[0] == Interval(0.86, 0.90));
  CHECK(joint[2].focal[1] == Interval(0.3, 0.4));
}

TEST_CASE("independent combination: identity and certainty") {
  const std::vector<IntervalDS> one{decay_rate_evidence()};
  const DSStructure<Box> j1 = convolve_independent(one);
  REQUIRE(j1.size() == 2);
  CHECK(j1[0].focal.dims() == 1);
  CHECK(j1[0].focal[0] == Interval(0.86, 0.90));
  CHECK(j1[0].mass == 0.2);

  const std::vector<IntervalDS> certain{IntervalDS({{Interval(1, 2), 1.0}}),
                                        IntervalDS({{Interval(3, 3), 1.0}})};
  const DSStructure<Box> j2 = convolve_independent(certain);
  REQUIRE(j2.size() == 1);
  CHECK(j2[0].mass == 1.0);
  CHECK_THROWS_AS(convolve_independent(std::span<const IntervalDS>{}), std::invalid_argument);
}

TEST_CASE("cumulative curve properties on random structures") {
  std::mt19937 gen(20240817);
  for (int rep = 0; rep < 100; ++rep) {
    const IntervalDS ds = random_structure(gen, true);
    const Interval sup = support(ds);
    CHECK(cbf(ds, sup.lo() - 1.0) == 0.0);
    CHECK(cpf(ds, sup.hi() + 1.0) == doctest::Approx(1.0).epsilon(1e-12));
    std::uniform_real_distribution<double> xd(sup.lo() - 1.0, sup.hi() + 1.0);
    double prev_cbf = 0.0, prev_cpf = 0.0;
    std::vector<double> xs(20);
    for (auto& x : xs) x = xd(gen);
    std::sort(xs.begin(), xs.end());
    for (double x : xs) {
      const double b = cbf(ds, x), p = cpf(ds, x);
      CHECK(b <= p + 1e-15);
      CHECK(b >= prev_cbf - 1e-15);  // nondecreasing
      CHECK(p >= prev_cpf - 1e-15);
      prev_cbf = b;
      prev_cpf = p;
    }
  }
}

TEST_CASE("pignistic density integrates to one and reproduces the expectation") {
  std::mt19937 gen(777);
  for (int rep = 0; rep < 50; ++rep) {
    const IntervalDS ds = random_structure(gen, false);
    // density is constant between focal endpoints: exact midpoint sums
    std::vector<double> bp;
    for (const auto& it : ds) {
      bp.push_back(it.focal.lo());
      bp.push_back(it.focal.hi());
    }
    std::sort(bp.begin(), bp.end());
    bp.erase(std::unique(bp.begin(), bp.end()), bp.end());
    double mass = 0.0, mean = 0.0;
    for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
      const double mid = 0.5 * (bp[i] + bp[i + 1]);
      const double len = bp[i + 1] - bp[i];
      const double d = pignistic_pdf(ds, mid);
      mass += d * len;
      mean += d * mid * len;
    }
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(mean == doctest::Approx(pignistic_expectation(ds)).epsilon(1e-9));
  }
}

TEST_CASE("ignorance measure properties on random structures") {
  std::mt19937 gen(31337);
  for (int rep = 0; rep < 20; ++rep) {
    const IntervalDS ds = random_structure(gen, false);
    const double n = nidi(ds);
    CHECK(n >= 0.0);
    CHECK(n <= 1.0 + 1e-12);
    // against the dense independent oracle
    const double oracle = grid_ignorance(ds, 200000);
    CHECK(std::abs(ignorance_integral(ds) - oracle) < 1e-3);
    // invariant under increasing affine maps
    std::vector<FocalElement<Interval>> mapped;
    for (const auto& it : ds)
      mapped.push_back({Interval(2.5 * it.focal.lo() - 3.0, 2.5 * it.focal.hi() - 3.0),
                        it.mass});
    CHECK(nidi(IntervalDS(std::move(mapped))) == doctest::Approx(n).epsilon(1e-12));
  }
}

TEST_CASE("combination conserves mass over random factor sets") {
  std::mt19937 gen(5150);
  for (int rep = 0; rep < 30; ++rep) {
    std::vector<IntervalDS> factors;
    const int nf = 2 + rep % 2;
    for (int f = 0; f < nf; ++f) factors.push_back(random_structure(gen, true));
    const DSStructure<Box> joint = convolve_independent(factors);
    std::size_t expected = 1;
    for (const auto& f : factors) expected *= f.size();
    CHECK(joint.size() == expected);
    double total = 0.0;
    for (const auto& it : joint) total += it.mass;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  }
}

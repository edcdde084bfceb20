#include <cmath>
#include <memory>
#include <random>

#include <doctest.h>

#include "caracomm/geometry.hpp"

using namespace caracomm;

namespace {

std::shared_ptr<PointSet> make_set(std::size_t d, std::vector<Point> pts) {
  auto s = std::make_shared<PointSet>();
  s->dimension = d;
  s->points = std::move(pts);
  return s;
}

ConvexCombination make_combo(std::shared_ptr<const PointSet> set,
                             std::vector<WeightedIndex> support) {
  ConvexCombination c;
  c.set = std::move(set);
  c.support = std::move(support);
  return c;
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

ConvexCombination random_instance(std::mt19937_64& rng, std::size_t d,
                                  std::size_t m, double coord_range = 1.0) {
  std::vector<Point> pts(m, Point(d));
  for (auto& p : pts)
    for (auto& v : p) v = coord_range * (2.0 * uniform01(rng) - 1.0);
  ConvexCombination c;
  c.set = make_set(d, std::move(pts));
  double sum = 0.0;
  c.support.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    c.support[i] = {i, uniform01(rng) + 1e-6};
    sum += c.support[i].weight;
  }
  for (auto& e : c.support) e.weight /= sum;
  return c;
}

// Postcondition verifier for affine dependences: lambda nonzero, sums to 0,
// and the weighted point sum vanishes.
void check_dependence(const PointSet& ps, const std::vector<std::size_t>& idx,
                      const std::vector<double>& lambda) {
  REQUIRE(lambda.size() == idx.size());
  double norm = 0.0, sum = 0.0;
  Point acc(ps.dimension, 0.0);
  for (std::size_t j = 0; j < idx.size(); ++j) {
    norm = std::max(norm, std::abs(lambda[j]));
    sum += lambda[j];
    for (std::size_t i = 0; i < ps.dimension; ++i)
      acc[i] += lambda[j] * ps.points[idx[j]][i];
  }
  CHECK(norm > 1e-9);
  CHECK(std::abs(sum) <= 1e-9 * std::max(norm, 1.0));
  for (double v : acc) CHECK(std::abs(v) <= 1e-9 * std::max(norm, 1.0));
}

}  // namespace

TEST_CASE("eval_combination basics") {
  auto set = make_set(2, {{0, 0}, {1, 0}, {0, 1}});

  SUBCASE("single point, weight 1") {
    auto c = make_combo(set, {{1, 1.0}});
    const Point x = eval_combination(c);
    CHECK(x[0] == doctest::Approx(1.0));
    CHECK(x[1] == doctest::Approx(0.0));
  }

  SUBCASE("centroid of the triangle") {
    auto c = make_combo(set, {{0, 1.0 / 3}, {1, 1.0 / 3}, {2, 1.0 / 3}});
    const Point x = eval_combination(c);
    CHECK(x[0] == doctest::Approx(1.0 / 3).epsilon(1e-12));
    CHECK(x[1] == doctest::Approx(1.0 / 3).epsilon(1e-12));
  }

  SUBCASE("weighted antipodal pair") {
    auto pair = make_set(2, {{1, 1}, {-1, -1}});
    auto c = make_combo(pair, {{0, 0.75}, {1, 0.25}});
    const Point x = eval_combination(c);
    CHECK(x[0] == doctest::Approx(0.5));
    CHECK(x[1] == doctest::Approx(0.5));
  }

  SUBCASE("invalid: index out of range") {
    auto c = make_combo(set, {{7, 1.0}});
    CHECK_THROWS_AS(eval_combination(c), std::invalid_argument);
  }
}

TEST_CASE("find_affine_dependence") {
  SUBCASE("three collinear points on a line") {
    auto set = make_set(1, {{0.0}, {0.5}, {1.0}});
    const std::vector<std::size_t> idx{0, 1, 2};
    auto lam = find_affine_dependence(*set, idx);
    REQUIRE(lam.has_value());
    check_dependence(*set, idx, *lam);
    // Null space is one-dimensional here, so lambda must be proportional to
    // (1, -2, 1).
    const double s = (*lam)[0];
    CHECK((*lam)[1] == doctest::Approx(-2.0 * s).epsilon(1e-9));
    CHECK((*lam)[2] == doctest::Approx(s).epsilon(1e-9));
  }

  SUBCASE("two affinely independent points") {
    auto set = make_set(2, {{0, 0}, {1, 0}});
    const std::vector<std::size_t> idx{0, 1};
    CHECK_FALSE(find_affine_dependence(*set, idx).has_value());
  }

  SUBCASE("four corners of the unit square") {
    auto set = make_set(2, {{0, 0}, {1, 0}, {0, 1}, {1, 1}});
    const std::vector<std::size_t> idx{0, 1, 2, 3};
    auto lam = find_affine_dependence(*set, idx);
    REQUIRE(lam.has_value());
    check_dependence(*set, idx, *lam);
  }

  SUBCASE("duplicate indices rejected") {
    auto set = make_set(2, {{0, 0}, {1, 0}});
    const std::vector<std::size_t> idx{0, 0};
    CHECK_THROWS_AS(find_affine_dependence(*set, idx), std::invalid_argument);
  }
}

TEST_CASE("caratheodory_reduce") {
  SUBCASE("small support returned unchanged") {
    auto set = make_set(2, {{0, 0}, {1, 0}, {0, 1}});
    auto c = make_combo(set, {{0, 0.5}, {2, 0.5}});
    auto r = caratheodory_reduce(c);
    REQUIRE(r.support.size() == 2);
    CHECK(r.support[0].index == 0);
    CHECK(r.support[0].weight == 0.5);
  }

  SUBCASE("midpoint over three collinear points") {
    auto set = make_set(1, {{0.0}, {0.5}, {1.0}});
    auto c = make_combo(set, {{0, 0.25}, {1, 0.5}, {2, 0.25}});
    auto r = caratheodory_reduce(c);
    CHECK(r.support.size() <= 2);
    CHECK(eval_combination(r)[0] == doctest::Approx(0.5).epsilon(1e-9));
  }

  SUBCASE("center of the unit square") {
    auto set = make_set(2, {{0, 0}, {1, 0}, {0, 1}, {1, 1}});
    auto c = make_combo(set, {{0, 0.25}, {1, 0.25}, {2, 0.25}, {3, 0.25}});
    auto r = caratheodory_reduce(c);
    CHECK(r.support.size() <= 3);
    const Point x = eval_combination(r);
    CHECK(x[0] == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(x[1] == doctest::Approx(0.5).epsilon(1e-9));
  }

  SUBCASE("duplicate points collapse") {
    auto set = make_set(1, {{0.25}, {0.25}, {0.25}});
    auto c = make_combo(set, {{0, 0.4}, {1, 0.4}, {2, 0.2}});
    auto r = caratheodory_reduce(c);
    CHECK(r.support.size() <= 2);
    CHECK(eval_combination(r)[0] == doctest::Approx(0.25).epsilon(1e-9));
  }
}

TEST_CASE("caratheodory_reduce properties on random instances") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t d = 2 + rng() % 7;
    const std::size_t m = d + 2 + rng() % (4 * d);
    const ConvexCombination c = random_instance(rng, d, m);
    const Point target = eval_combination(c);

    const ConvexCombination r = caratheodory_reduce(c);
    CHECK(r.support.size() <= d + 1);
    CHECK(linf_distance(eval_combination(r), target) <= 1e-9);

    double sum = 0.0;
    std::size_t ci = 0;
    for (const auto& e : r.support) {
      CHECK(e.weight >= 0.0);
      sum += e.weight;
      // support(result) subset of support(c)
      while (ci < c.support.size() && c.support[ci].index < e.index) ++ci;
      REQUIRE(ci < c.support.size());
      CHECK(c.support[ci].index == e.index);
    }
    CHECK(std::abs(sum - 1.0) <= 1e-12);

    // idempotence
    const ConvexCombination r2 = caratheodory_reduce(r);
    REQUIRE(r2.support.size() == r.support.size());
    for (std::size_t j = 0; j < r.support.size(); ++j) {
      CHECK(r2.support[j].index == r.support[j].index);
      CHECK(r2.support[j].weight == r.support[j].weight);
    }
  }
}

TEST_CASE("sampling plan arithmetic") {
  // Frozen from a long-double recomputation of ceil(2 ln(2d/eta)/delta^2).
  const long double raw =
      2.0L * std::log(2.0L * 4096.0L / 0.01L) / (0.1L * 0.1L);
  REQUIRE(static_cast<std::size_t>(std::ceil(static_cast<double>(raw))) == 2724);

  const SamplingPlan plan = SamplingPlan::for_dimension(4096, 0.1, 0.01);
  CHECK(plan.k == 2724);
  CHECK(plan.max_retries == 16);

  CHECK_THROWS_AS(SamplingPlan::for_dimension(4096, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(SamplingPlan::for_dimension(4096, 0.1, 1.5), std::invalid_argument);
}

TEST_CASE("approx_caratheodory_sample") {
  SUBCASE("point mass returns itself") {
    auto set = make_set(2, {{0.25, -0.5}});
    auto c = make_combo(set, {{0, 1.0}});
    auto plan = SamplingPlan::for_dimension(2, 0.1);
    auto r = approx_caratheodory_sample(c, plan, 7);
    REQUIRE(r.support.size() == 1);
    CHECK(r.support[0].weight == 1.0);
    CHECK(linf_distance(eval_combination(r), eval_combination(c)) == 0.0);
  }

  SUBCASE("antipodal pair frequency") {
    auto set = make_set(2, {{1, 1}, {-1, -1}});
    auto c = make_combo(set, {{0, 0.5}, {1, 0.5}});
    auto plan = SamplingPlan::for_dimension(2, 0.05);
    auto r = approx_caratheodory_sample(c, plan, 42);
    // L-inf distance to the origin is |2 freq(0) - 1|, so the accepted draw
    // has freq(0) within delta/2 of one half.
    double w0 = 0.0;
    for (const auto& e : r.support)
      if (e.index == 0) w0 = e.weight;
    CHECK(std::abs(w0 - 0.5) <= 0.025);
  }

  SUBCASE("norm precondition enforced") {
    auto set = make_set(1, {{2.0}});
    auto c = make_combo(set, {{0, 1.0}});
    auto plan = SamplingPlan::for_dimension(1, 0.1);
    CHECK_THROWS_AS(approx_caratheodory_sample(c, plan, 0), std::invalid_argument);
  }

  SUBCASE("reproducible and verified on random instances") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 20; ++trial) {
      const std::size_t d = 4 + rng() % 29;
      const ConvexCombination c = random_instance(rng, d, 30 + rng() % 100);
      const auto plan = SamplingPlan::for_dimension(d, 0.15);
      const auto r1 = approx_caratheodory_sample(c, plan, trial);
      const auto r2 = approx_caratheodory_sample(c, plan, trial);
      REQUIRE(r1.support.size() == r2.support.size());
      CHECK(r1.support.size() <= plan.k);
      double sum = 0.0;
      for (std::size_t j = 0; j < r1.support.size(); ++j) {
        CHECK(r1.support[j].index == r2.support[j].index);
        CHECK(r1.support[j].weight == r2.support[j].weight);
        CHECK(r1.support[j].weight >= 0.0);
        sum += r1.support[j].weight;
      }
      CHECK(std::abs(sum - 1.0) <= 1e-12);
      CHECK(linf_distance(eval_combination(r1), eval_combination(c)) <= plan.delta);
    }
  }

  SUBCASE("retries exhausted raises") {
    // delta far below what k samples can achieve
    auto set = make_set(1, {{1.0}, {-1.0}});
    auto c = make_combo(set, {{0, 0.5}, {1, 0.5}});
    SamplingPlan plan;
    plan.delta = 1e-9;
    plan.eta = 0.5;
    plan.k = 7;  // odd, so |2 freq - 1| >= 1/7 on every draw
    plan.max_retries = 4;
    CHECK_THROWS_AS(approx_caratheodory_sample(c, plan, 1), SamplingError);
  }
}

TEST_CASE("first-draw failure rate is Hoeffding-consistent") {
  std::mt19937_64 rng(5150);
  const std::size_t d = 64;
  const double eta = 0.01;
  const ConvexCombination c = random_instance(rng, d, 400);
  SamplingPlan plan = SamplingPlan::for_dimension(d, 0.2, eta);
  plan.max_retries = 1;

  const int trials = 500;
  int failures = 0;
  for (int t = 0; t < trials; ++t) {
    try {
      approx_caratheodory_sample(c, plan, 1000 + t);
    } catch (const SamplingError&) {
      ++failures;
    }
  }
  const double bound = eta + 3.0 * std::sqrt(eta / trials);
  CHECK(static_cast<double>(failures) / trials <= bound);
}

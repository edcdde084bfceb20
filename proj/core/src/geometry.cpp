#include "caracomm/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace caracomm {

namespace {

constexpr double kWeightSumTol = 1e-12;
constexpr double kRenormTrigger = 1e-15;
constexpr double kPivotRelTol = 1e-10;

double uniform01(std::mt19937_64& rng) {
  // 53-bit mantissa draw; avoids distribution objects so streams are
  // identical across standard library implementations.
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

void renormalize(std::vector<WeightedIndex>& support) {
  double sum = 0.0;
  for (const auto& e : support) sum += e.weight;
  if (std::abs(sum - 1.0) > kRenormTrigger && sum > 0.0) {
    for (auto& e : support) e.weight /= sum;
  }
}

}  // namespace

void PointSet::validate() const {
  if (dimension == 0) throw std::invalid_argument("PointSet: dimension must be positive");
  if (points.empty()) throw std::invalid_argument("PointSet: needs at least one point");
  for (const auto& p : points) {
    if (p.size() != dimension)
      throw std::invalid_argument("PointSet: point length differs from dimension");
    for (double v : p)
      if (!std::isfinite(v))
        throw std::invalid_argument("PointSet: non-finite coordinate");
  }
}

void ConvexCombination::validate() const {
  if (!set) throw std::invalid_argument("ConvexCombination: missing point set");
  set->validate();
  if (support.empty())
    throw std::invalid_argument("ConvexCombination: empty support");
  double sum = 0.0;
  std::size_t prev = 0;
  bool first = true;
  for (const auto& e : support) {
    if (e.index >= set->points.size())
      throw std::invalid_argument("ConvexCombination: index out of range");
    if (!first && e.index <= prev)
      throw std::invalid_argument("ConvexCombination: support not strictly ascending");
    prev = e.index;
    first = false;
    if (!(e.weight > 0.0) || e.weight > 1.0 + kWeightSumTol)
      throw std::invalid_argument("ConvexCombination: weight outside (0,1]");
    sum += e.weight;
  }
  if (std::abs(sum - 1.0) > kWeightSumTol)
    throw std::invalid_argument("ConvexCombination: weights do not sum to 1");
}

SamplingPlan SamplingPlan::for_dimension(std::size_t d, double delta,
                                         double eta, int max_retries) {
  if (!(delta > 0.0)) throw std::invalid_argument("SamplingPlan: delta must be > 0");
  if (!(eta > 0.0 && eta < 1.0)) throw std::invalid_argument("SamplingPlan: eta must be in (0,1)");
  if (max_retries < 1) throw std::invalid_argument("SamplingPlan: max_retries must be >= 1");
  if (d == 0) throw std::invalid_argument("SamplingPlan: dimension must be positive");
  SamplingPlan plan;
  plan.delta = delta;
  plan.eta = eta;
  plan.max_retries = max_retries;
  const double raw = 2.0 * std::log(2.0 * static_cast<double>(d) / eta) / (delta * delta);
  plan.k = static_cast<std::size_t>(std::ceil(raw));
  return plan;
}

Point eval_combination(const ConvexCombination& c) {
  c.validate();
  Point out(c.set->dimension, 0.0);
  for (const auto& e : c.support) {
    const Point& p = c.set->points[e.index];
    for (std::size_t j = 0; j < out.size(); ++j) out[j] += e.weight * p[j];
  }
  return out;
}

double linf_distance(const Point& a, const Point& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("linf_distance: dimension mismatch");
  double m = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j)
    m = std::max(m, std::abs(a[j] - b[j]));
  return m;
}

std::optional<std::vector<double>> find_affine_dependence(
    const PointSet& ps, std::span<const std::size_t> indices) {
  const std::size_t d = ps.dimension;
  const std::size_t m = indices.size();
  if (m == 0) throw std::invalid_argument("find_affine_dependence: empty index list");
  for (std::size_t j = 0; j < m; ++j) {
    if (indices[j] >= ps.points.size())
      throw std::invalid_argument("find_affine_dependence: index out of range");
    for (std::size_t jj = j + 1; jj < m; ++jj)
      if (indices[j] == indices[jj])
        throw std::invalid_argument("find_affine_dependence: duplicate index");
  }

  const std::size_t rows = d + 1;
  // Lifted matrix A, row-major: column j is (p_j, 1).
  std::vector<double> a(rows * m, 0.0);
  for (std::size_t j = 0; j < m; ++j) {
    const Point& p = ps.points[indices[j]];
    for (std::size_t i = 0; i < d; ++i) a[i * m + j] = p[i];
    a[d * m + j] = 1.0;
  }

  double max_col_norm = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < rows; ++i) s += a[i * m + j] * a[i * m + j];
    max_col_norm = std::max(max_col_norm, std::sqrt(s));
  }
  const double tol = kPivotRelTol * std::max(max_col_norm, 1.0);

  // Forward elimination with partial pivoting; record the pivot column of
  // each eliminated row.
  std::vector<std::size_t> pivot_col;
  pivot_col.reserve(rows);
  std::vector<bool> is_pivot(m, false);
  std::size_t r = 0;
  for (std::size_t col = 0; col < m && r < rows; ++col) {
    std::size_t best = r;
    for (std::size_t i = r + 1; i < rows; ++i)
      if (std::abs(a[i * m + col]) > std::abs(a[best * m + col])) best = i;
    if (std::abs(a[best * m + col]) <= tol) continue;  // free column
    if (best != r)
      for (std::size_t j = col; j < m; ++j)
        std::swap(a[r * m + j], a[best * m + j]);
    const double piv = a[r * m + col];
    for (std::size_t i = r + 1; i < rows; ++i) {
      const double factor = a[i * m + col] / piv;
      if (factor == 0.0) continue;
      for (std::size_t j = col; j < m; ++j) a[i * m + j] -= factor * a[r * m + j];
    }
    pivot_col.push_back(col);
    is_pivot[col] = true;
    ++r;
  }

  std::size_t free_col = m;
  for (std::size_t j = 0; j < m; ++j)
    if (!is_pivot[j]) { free_col = j; break; }
  if (free_col == m) return std::nullopt;

  // Back-substitute with the free variable set to 1, all other free
  // variables 0.
  std::vector<double> lambda(m, 0.0);
  lambda[free_col] = 1.0;
  for (std::size_t ri = pivot_col.size(); ri-- > 0;) {
    const std::size_t pc = pivot_col[ri];
    double s = a[ri * m + free_col] * lambda[free_col];
    for (std::size_t j = pc + 1; j < m; ++j)
      if (is_pivot[j]) s += a[ri * m + j] * lambda[j];
    lambda[pc] = -s / a[ri * m + pc];
  }
  return lambda;
}

namespace {

// One elimination round on the first window_size support entries. Returns
// false if no dependence was found there.
bool eliminate_once(const PointSet& set, std::vector<WeightedIndex>& support,
                    std::size_t window_size) {
  std::vector<std::size_t> window(window_size);
  for (std::size_t j = 0; j < window_size; ++j) window[j] = support[j].index;
  auto dep = find_affine_dependence(set, window);
  if (!dep) return false;
  auto& lambda = *dep;

  double max_pos = 0.0;
  for (double v : lambda) max_pos = std::max(max_pos, v);
  if (max_pos <= 0.0)
    for (double& v : lambda) v = -v;

  double step = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < window_size; ++j)
    if (lambda[j] > 0.0) step = std::min(step, support[j].weight / lambda[j]);
  if (!std::isfinite(step)) return false;

  for (std::size_t j = 0; j < window_size; ++j)
    support[j].weight -= step * lambda[j];

  // Ties: every weight driven to (numerical) zero is dropped.
  std::erase_if(support, [](const WeightedIndex& e) { return e.weight <= 1e-15; });
  renormalize(support);
  return true;
}

}  // namespace

ConvexCombination caratheodory_reduce(const ConvexCombination& c) {
  c.validate();
  const std::size_t target = c.set->dimension + 1;
  if (c.support.size() <= target) return c;

  ConvexCombination out = c;
  while (out.support.size() > target) {
    const std::size_t before = out.support.size();
    // A dependence always exists among any d+2 lifted columns, so a small
    // window keeps each elimination cheap.
    const std::size_t window = std::min(out.support.size(), target + 1);
    if (!eliminate_once(*out.set, out.support, window) ||
        out.support.size() >= before) {
      std::vector<std::size_t> idx;
      idx.reserve(out.support.size());
      for (const auto& e : out.support) idx.push_back(e.index);
      throw ReductionError("caratheodory_reduce: no affine dependence found", idx);
    }
  }
  return out;
}

ConvexCombination approx_caratheodory_sample(const ConvexCombination& c,
                                             const SamplingPlan& plan,
                                             std::uint64_t seed) {
  c.validate();
  if (plan.k == 0) throw std::invalid_argument("approx_caratheodory_sample: plan.k must be positive");
  for (const auto& p : c.set->points)
    for (double v : p)
      if (std::abs(v) > 1.0 + 1e-12)
        throw std::invalid_argument(
            "approx_caratheodory_sample: point max-norm exceeds 1");

  const Point target = eval_combination(c);

  std::vector<double> cdf(c.support.size());
  double acc = 0.0;
  for (std::size_t j = 0; j < c.support.size(); ++j) {
    acc += c.support[j].weight;
    cdf[j] = acc;
  }
  cdf.back() = 1.0;

  std::mt19937_64 rng(seed);
  std::vector<std::size_t> counts(c.support.size());
  double best = std::numeric_limits<double>::infinity();
  for (int attempt = 0; attempt < plan.max_retries; ++attempt) {
    std::fill(counts.begin(), counts.end(), 0);
    for (std::size_t s = 0; s < plan.k; ++s) {
      const double u = uniform01(rng);
      const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
      counts[std::min<std::size_t>(it - cdf.begin(), cdf.size() - 1)]++;
    }

    ConvexCombination sampled;
    sampled.set = c.set;
    const double inv_k = 1.0 / static_cast<double>(plan.k);
    for (std::size_t j = 0; j < counts.size(); ++j)
      if (counts[j] > 0)
        sampled.support.push_back(
            {c.support[j].index, static_cast<double>(counts[j]) * inv_k});

    const double dist = linf_distance(eval_combination(sampled), target);
    if (dist <= plan.delta) return sampled;
    best = std::min(best, dist);
  }
  throw SamplingError("approx_caratheodory_sample: retries exhausted",
                      plan.max_retries, best);
}

}  // namespace caracomm

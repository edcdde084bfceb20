#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace caracomm {

using Point = std::vector<double>;

/// An ordered list of points in R^d. Duplicate points are allowed and
/// treated as distinct columns.
struct PointSet {
  std::size_t dimension = 0;
  std::vector<Point> points;

  /// Throws std::invalid_argument if empty, dimension mismatch, or any
  /// coordinate is non-finite.
  void validate() const;
};

struct WeightedIndex {
  std::size_t index = 0;
  double weight = 0.0;
};

/// A convex combination over a shared PointSet. Support is kept sorted by
/// ascending index, entries with weight 0 are removed, and weights sum to 1
/// within 1e-12.
struct ConvexCombination {
  std::shared_ptr<const PointSet> set;
  std::vector<WeightedIndex> support;

  void validate() const;
  std::size_t dimension() const { return set ? set->dimension : 0; }
};

/// Parameters of the i.i.d. sampling construction. The sample count follows
/// k = ceil(2 * ln(2d / eta) / delta^2), a Hoeffding bound union-bounded over
/// the d coordinates.
struct SamplingPlan {
  double delta = 0.0;
  double eta = 0.01;
  std::size_t k = 0;
  int max_retries = 16;

  static SamplingPlan for_dimension(std::size_t d, double delta,
                                    double eta = 0.01, int max_retries = 16);
};

/// Thrown when the elimination loop cannot find an affine dependence even
/// though the support is larger than d+1.
class ReductionError : public std::runtime_error {
 public:
  ReductionError(std::string what, std::vector<std::size_t> support_indices)
      : std::runtime_error(std::move(what)),
        support(std::move(support_indices)) {}
  std::vector<std::size_t> support;
};

/// Thrown when verify-and-retry sampling exhausts its retry budget.
class SamplingError : public std::runtime_error {
 public:
  SamplingError(std::string what, int attempts_made, double best)
      : std::runtime_error(std::move(what)),
        attempts(attempts_made),
        best_distance(best) {}
  int attempts;
  double best_distance;
};

/// Sum of weight * point over the support, accumulated in ascending index
/// order so results are bit-reproducible.
Point eval_combination(const ConvexCombination& c);

double linf_distance(const Point& a, const Point& b);

/// Nonzero lambda with sum(lambda) = 0 and sum(lambda_i * p_i) = 0, i.e. a
/// null-space vector of the (d+1) x m matrix of points lifted with a trailing
/// 1. Guaranteed to exist when m > d+1; returns nullopt when the lifted
/// columns are independent.
std::optional<std::vector<double>> find_affine_dependence(
    const PointSet& ps, std::span<const std::size_t> indices);

/// Exact Caratheodory: returns an equivalent combination with support of at
/// most d+1 points, eliminating one affine dependence per round.
ConvexCombination caratheodory_reduce(const ConvexCombination& c);

/// Approximate Caratheodory, Las Vegas flavor: draws plan.k indices i.i.d.
/// from the weight distribution, keeps the empirical combination only if its
/// exact L-inf distance to eval_combination(c) is <= plan.delta, retrying up
/// to plan.max_retries times. Requires max-norm of every point <= 1.
ConvexCombination approx_caratheodory_sample(const ConvexCombination& c,
                                             const SamplingPlan& plan,
                                             std::uint64_t seed);

}  // namespace caracomm

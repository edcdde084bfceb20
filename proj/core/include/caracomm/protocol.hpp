#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "caracomm/geometry.hpp"

namespace caracomm {

/// Boolean function on {0,1}^n x {0,1}^n, bit-packed. Entry (x, y) lives at
/// flat index x * 2^n + y.
struct TruthTable {
  static constexpr int kMaxN = 14;  // memory guard, N <= 2^28 bits

  int n = 0;
  std::vector<std::uint64_t> words;

  static TruthTable zeros(int n);

  std::size_t size() const { return std::size_t{1} << (2 * n); }

  bool get(std::uint32_t x, std::uint32_t y) const {
    const std::size_t idx = (static_cast<std::size_t>(x) << n) | y;
    return (words[idx >> 6] >> (idx & 63)) & 1u;
  }
  void set(std::uint32_t x, std::uint32_t y, bool v) {
    const std::size_t idx = (static_cast<std::size_t>(x) << n) | y;
    const std::uint64_t mask = std::uint64_t{1} << (idx & 63);
    if (v) words[idx >> 6] |= mask; else words[idx >> 6] &= ~mask;
  }
};

struct ProtocolResult {
  bool output = false;
  int cost_bits = 0;  // bits exchanged on this input, answer bit included
};

/// A two-party protocol reduced to what the transformation needs: a pure
/// evaluator and a worst-case bit count.
struct DeterministicProtocol {
  int n = 0;
  int declared_cost = 0;
  std::function<ProtocolResult(std::uint32_t x, std::uint32_t y)> evaluate;
};

/// Distribution over deterministic protocols; the randomness is shared.
struct PublicCoinProtocol {
  int n = 0;
  std::vector<DeterministicProtocol> protocols;
  std::vector<double> weights;

  void validate() const;
};

/// Entrywise acceptance probabilities of a randomized protocol; the point
/// P in R^N that the geometry operates on.
struct ProbabilityTable {
  int n = 0;
  std::vector<double> values;

  void validate() const;
};

void check_table_guard(int n);

/// Embeds a protocol as a 0/1 vector by exhaustive enumeration of all inputs.
TruthTable output_table(const DeterministicProtocol& p);

/// Weighted average of the member protocols' output tables.
ProbabilityTable mixture_table(const PublicCoinProtocol& pub);

/// Worst-case disagreement probability: max over inputs of |f - t|.
double error_linf(const TruthTable& f, const ProbabilityTable& t);

/// Cost of the public protocol: max declared_cost over the support.
int comm_cost(const PublicCoinProtocol& pub);

Point table_to_point(const TruthTable& t);

/// Bridge to geometry_core: the point set of embedded member protocols plus
/// the weight vector as a convex combination over it.
ConvexCombination embed_public_protocol(const PublicCoinProtocol& pub);

}  // namespace caracomm

#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "caracomm/protocol.hpp"

namespace caracomm {

/// Result of compiling away the shared randomness: Alice samples an index
/// into the support with her private coins and transmits it with a
/// fixed-length code of ceil(log2 k) bits.
struct PrivateCoinProtocol {
  int n = 0;
  std::vector<std::pair<double, DeterministicProtocol>> support;
  int index_bits = 0;
  int total_cost = 0;

  void validate() const;
  ProbabilityTable mixture() const;
};

struct CompilationReport {
  double epsilon_measured = 0.0;
  double delta_target = 0.0;
  double error_measured = 0.0;
  std::size_t k = 0;
  int index_bits = 0;
  int public_cost = 0;
  int private_cost = 0;
  bool reduction_used = false;
  std::uint64_t seed = 0;

  /// True iff error_measured <= epsilon_measured + delta_target.
  bool guarantee_holds() const;
};

struct NewmanOptions {
  double delta = 0.1;
  double eta = 0.01;
  int max_retries = 16;
  std::uint64_t seed = 0;
  /// Exact Caratheodory step before sampling. When unset, enabled
  /// automatically if the support exceeds N+1 and N <= 4096.
  std::optional<bool> use_exact_reduction;
};

/// The whole pipeline: measure epsilon of the public protocol against f,
/// optionally reduce the support exactly, sparsify by verified sampling, and
/// assemble the private-coin protocol with its report.
std::pair<PrivateCoinProtocol, CompilationReport> newman_transform(
    const TruthTable& f, const PublicCoinProtocol& pub,
    const NewmanOptions& options);

/// One private-coin execution: sample an index from the support weights with
/// the seeded generator, charge index_bits for sending it, then run the
/// chosen deterministic protocol. Returns (output bit, bits used).
std::pair<bool, int> run_private_protocol(const PrivateCoinProtocol& p,
                                          std::uint32_t x, std::uint32_t y,
                                          std::uint64_t seed);

struct ScalingRow {
  int n = 0;
  std::size_t k = 0;
  int index_bits = 0;
};

/// Index-cost arithmetic for a range of input lengths at fixed delta:
/// d = 2^{2n}, k from the sampling plan, index_bits = ceil(log2 k).
std::vector<ScalingRow> measured_cost_bound_check(
    const std::vector<int>& n_values, double delta, double eta = 0.01);

int ceil_log2(std::size_t k);

}  // namespace caracomm

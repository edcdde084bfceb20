#pragma once

#include <cstdint>
#include <utility>

#include "caracomm/protocol.hpp"

namespace caracomm {

/// Public-coin EQUALITY with t independent GF(2) inner-product hashes: one
/// deterministic protocol per hash string r in {0,1}^{t*n}. Alice sends her
/// t hash bits, Bob answers with one bit. One-sided: equal inputs never err,
/// unequal inputs are accepted with probability exactly 2^{-t}.
struct EqualityFamily {
  int n = 0;
  int t = 0;
};

/// Builds the EQUALITY truth table and the uniform mixture over all 2^{t*n}
/// hash protocols. Guard: t*n <= 16.
std::pair<TruthTable, PublicCoinProtocol> build_equality(int n, int t);

/// q deterministic protocols with uniformly random output tables, declared
/// cost 2n (send-everything), and random normalized weights. Reproducible
/// from the seed.
PublicCoinProtocol build_random_mixture(int n, int q, std::uint64_t seed);

/// Independent oracle for error_linf(f, mixture_table(pub)): direct double
/// loop over inputs and support, no table caching. Guards: n <= 6 and
/// support <= 2^12.
double brute_force_best_error(const TruthTable& f,
                              const PublicCoinProtocol& pub);

}  // namespace caracomm

#include "caracomm/equality.hpp"

#include <bit>
#include <cmath>
#include <memory>
#include <random>
#include <stdexcept>

namespace caracomm {

namespace {

bool hashes_match(std::uint32_t r, int n, int t, std::uint32_t x,
                  std::uint32_t y) {
  const std::uint32_t mask = (std::uint32_t{1} << n) - 1;
  for (int j = 0; j < t; ++j) {
    const std::uint32_t rj = (r >> (j * n)) & mask;
    if ((std::popcount(rj & x) & 1) != (std::popcount(rj & y) & 1))
      return false;
  }
  return true;
}

}  // namespace

std::pair<TruthTable, PublicCoinProtocol> build_equality(int n, int t) {
  check_table_guard(n);
  if (t < 1) throw std::invalid_argument("build_equality: t must be >= 1");
  if (t * n > 16)
    throw std::length_error("build_equality: t*n exceeds the t*n <= 16 guard");

  TruthTable f = TruthTable::zeros(n);
  const std::uint32_t side = std::uint32_t{1} << n;
  for (std::uint32_t x = 0; x < side; ++x) f.set(x, x, true);

  PublicCoinProtocol pub;
  pub.n = n;
  const std::uint32_t family = std::uint32_t{1} << (t * n);
  const double w = 1.0 / static_cast<double>(family);
  pub.protocols.reserve(family);
  pub.weights.assign(family, w);
  for (std::uint32_t r = 0; r < family; ++r) {
    DeterministicProtocol p;
    p.n = n;
    p.declared_cost = t + 1;  // t hash bits from Alice, 1 answer bit from Bob
    p.evaluate = [r, n, t](std::uint32_t x, std::uint32_t y) {
      return ProtocolResult{hashes_match(r, n, t, x, y), t + 1};
    };
    pub.protocols.push_back(std::move(p));
  }
  return {std::move(f), std::move(pub)};
}

PublicCoinProtocol build_random_mixture(int n, int q, std::uint64_t seed) {
  check_table_guard(n);
  if (q < 1) throw std::invalid_argument("build_random_mixture: q must be >= 1");

  std::mt19937_64 rng(seed);
  PublicCoinProtocol pub;
  pub.n = n;
  const std::uint32_t side = std::uint32_t{1} << n;
  for (int i = 0; i < q; ++i) {
    auto table = std::make_shared<TruthTable>(TruthTable::zeros(n));
    for (std::uint32_t x = 0; x < side; ++x)
      for (std::uint32_t y = 0; y < side; ++y)
        table->set(x, y, (rng() & 1u) != 0);
    DeterministicProtocol p;
    p.n = n;
    p.declared_cost = 2 * n;
    p.evaluate = [table, n](std::uint32_t x, std::uint32_t y) {
      return ProtocolResult{table->get(x, y), 2 * n};
    };
    pub.protocols.push_back(std::move(p));
  }

  double sum = 0.0;
  pub.weights.resize(q);
  for (int i = 0; i < q; ++i) {
    pub.weights[i] = static_cast<double>(rng() >> 11) * 0x1.0p-53 + 1e-9;
    sum += pub.weights[i];
  }
  for (double& w : pub.weights) w /= sum;
  return pub;
}

double brute_force_best_error(const TruthTable& f,
                              const PublicCoinProtocol& pub) {
  pub.validate();
  if (f.n != pub.n)
    throw std::invalid_argument("brute_force_best_error: n mismatch");
  if (pub.n > 6)
    throw std::length_error("brute_force_best_error: n exceeds the n <= 6 guard");
  if (pub.protocols.size() > (std::size_t{1} << 12))
    throw std::length_error("brute_force_best_error: support exceeds 2^12 guard");

  const std::uint32_t side = std::uint32_t{1} << pub.n;
  double worst = 0.0;
  for (std::uint32_t x = 0; x < side; ++x) {
    for (std::uint32_t y = 0; y < side; ++y) {
      double p = 0.0;
      for (std::size_t i = 0; i < pub.protocols.size(); ++i)
        if (pub.weights[i] > 0.0 && pub.protocols[i].evaluate(x, y).output)
          p += pub.weights[i];
      const double fb = f.get(x, y) ? 1.0 : 0.0;
      worst = std::max(worst, std::abs(fb - p));
    }
  }
  return worst;
}

}  // namespace caracomm

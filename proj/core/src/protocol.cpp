#include "caracomm/protocol.hpp"

#include <cmath>
#include <stdexcept>

namespace caracomm {

namespace {
constexpr double kWeightSumTol = 1e-12;
}

void check_table_guard(int n) {
  if (n < 1) throw std::invalid_argument("table guard: n must be >= 1");
  if (n > TruthTable::kMaxN)
    throw std::length_error("table guard: n exceeds the n <= 14 memory guard");
}

TruthTable TruthTable::zeros(int n) {
  check_table_guard(n);
  TruthTable t;
  t.n = n;
  t.words.assign(((std::size_t{1} << (2 * n)) + 63) / 64, 0);
  return t;
}

void PublicCoinProtocol::validate() const {
  check_table_guard(n);
  if (protocols.empty())
    throw std::invalid_argument("PublicCoinProtocol: empty protocol list");
  if (protocols.size() != weights.size())
    throw std::invalid_argument("PublicCoinProtocol: weights/protocols size mismatch");
  double sum = 0.0;
  for (double w : weights) {
    if (w < 0.0) throw std::invalid_argument("PublicCoinProtocol: negative weight");
    sum += w;
  }
  if (std::abs(sum - 1.0) > kWeightSumTol)
    throw std::invalid_argument("PublicCoinProtocol: weights do not sum to 1");
  for (const auto& p : protocols) {
    if (p.n != n)
      throw std::invalid_argument("PublicCoinProtocol: member protocol has different n");
    if (!p.evaluate)
      throw std::invalid_argument("PublicCoinProtocol: member protocol has no evaluator");
  }
}

void ProbabilityTable::validate() const {
  check_table_guard(n);
  if (values.size() != (std::size_t{1} << (2 * n)))
    throw std::invalid_argument("ProbabilityTable: wrong length");
  for (double v : values)
    if (v < -kWeightSumTol || v > 1.0 + kWeightSumTol)
      throw std::invalid_argument("ProbabilityTable: entry outside [0,1]");
}

TruthTable output_table(const DeterministicProtocol& p) {
  check_table_guard(p.n);
  if (!p.evaluate) throw std::invalid_argument("output_table: no evaluator");
  TruthTable t = TruthTable::zeros(p.n);
  const std::uint32_t side = std::uint32_t{1} << p.n;
  for (std::uint32_t x = 0; x < side; ++x) {
    for (std::uint32_t y = 0; y < side; ++y) {
      const ProtocolResult r = p.evaluate(x, y);
      if (r.cost_bits > p.declared_cost)
        throw std::invalid_argument("output_table: per-input cost exceeds declared_cost");
      if (r.output) t.set(x, y, true);
    }
  }
  return t;
}

ProbabilityTable mixture_table(const PublicCoinProtocol& pub) {
  pub.validate();
  ProbabilityTable out;
  out.n = pub.n;
  out.values.assign(std::size_t{1} << (2 * pub.n), 0.0);
  for (std::size_t i = 0; i < pub.protocols.size(); ++i) {
    if (pub.weights[i] == 0.0) continue;
    const TruthTable t = output_table(pub.protocols[i]);
    for (std::size_t idx = 0; idx < out.values.size(); ++idx)
      if ((t.words[idx >> 6] >> (idx & 63)) & 1u) out.values[idx] += pub.weights[i];
  }
  return out;
}

double error_linf(const TruthTable& f, const ProbabilityTable& t) {
  if (f.n != t.n) throw std::invalid_argument("error_linf: table sizes differ");
  double m = 0.0;
  for (std::size_t idx = 0; idx < t.values.size(); ++idx) {
    const double fb = ((f.words[idx >> 6] >> (idx & 63)) & 1u) ? 1.0 : 0.0;
    m = std::max(m, std::abs(fb - t.values[idx]));
  }
  return m;
}

int comm_cost(const PublicCoinProtocol& pub) {
  pub.validate();
  int cost = -1;
  for (std::size_t i = 0; i < pub.protocols.size(); ++i)
    if (pub.weights[i] > 0.0) cost = std::max(cost, pub.protocols[i].declared_cost);
  if (cost < 0) throw std::invalid_argument("comm_cost: empty support");
  return cost;
}

Point table_to_point(const TruthTable& t) {
  Point p(t.size());
  for (std::size_t idx = 0; idx < p.size(); ++idx)
    p[idx] = ((t.words[idx >> 6] >> (idx & 63)) & 1u) ? 1.0 : 0.0;
  return p;
}

ConvexCombination embed_public_protocol(const PublicCoinProtocol& pub) {
  pub.validate();
  auto set = std::make_shared<PointSet>();
  set->dimension = std::size_t{1} << (2 * pub.n);
  set->points.reserve(pub.protocols.size());
  for (const auto& p : pub.protocols)
    set->points.push_back(table_to_point(output_table(p)));

  ConvexCombination c;
  c.set = std::move(set);
  for (std::size_t i = 0; i < pub.weights.size(); ++i)
    if (pub.weights[i] > 0.0) c.support.push_back({i, pub.weights[i]});
  return c;
}

}  // namespace caracomm

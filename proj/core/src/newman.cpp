#include "caracomm/newman.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <stdexcept>

namespace caracomm {

namespace {

constexpr std::size_t kAutoReductionMaxDim = 4096;

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

int ceil_log2(std::size_t k) {
  if (k == 0) throw std::invalid_argument("ceil_log2: k must be positive");
  if (k == 1) return 0;
  return std::bit_width(k - 1);
}

void PrivateCoinProtocol::validate() const {
  check_table_guard(n);
  if (support.empty())
    throw std::invalid_argument("PrivateCoinProtocol: empty support");
  double sum = 0.0;
  int max_cost = 0;
  for (const auto& [w, p] : support) {
    if (w < 0.0) throw std::invalid_argument("PrivateCoinProtocol: negative weight");
    if (p.n != n) throw std::invalid_argument("PrivateCoinProtocol: member n mismatch");
    sum += w;
    max_cost = std::max(max_cost, p.declared_cost);
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw std::invalid_argument("PrivateCoinProtocol: weights do not sum to 1");
  if (index_bits != ceil_log2(support.size()))
    throw std::invalid_argument("PrivateCoinProtocol: index_bits inconsistent");
  if (total_cost != index_bits + max_cost)
    throw std::invalid_argument("PrivateCoinProtocol: total_cost inconsistent");
}

ProbabilityTable PrivateCoinProtocol::mixture() const {
  PublicCoinProtocol as_mixture;
  as_mixture.n = n;
  for (const auto& [w, p] : support) {
    as_mixture.protocols.push_back(p);
    as_mixture.weights.push_back(w);
  }
  return mixture_table(as_mixture);
}

bool CompilationReport::guarantee_holds() const {
  return error_measured <= epsilon_measured + delta_target + 1e-12;
}

std::pair<PrivateCoinProtocol, CompilationReport> newman_transform(
    const TruthTable& f, const PublicCoinProtocol& pub,
    const NewmanOptions& options) {
  pub.validate();
  if (f.n != pub.n)
    throw std::invalid_argument("newman_transform: f and protocol disagree on n");
  if (!(options.delta > 0.0))
    throw std::invalid_argument("newman_transform: delta must be > 0");

  const std::size_t dim = std::size_t{1} << (2 * pub.n);

  // Member output tables drive everything downstream; compute them once.
  std::vector<TruthTable> tables;
  tables.reserve(pub.protocols.size());
  for (const auto& p : pub.protocols) tables.push_back(output_table(p));

  ProbabilityTable mixed;
  mixed.n = pub.n;
  mixed.values.assign(dim, 0.0);
  for (std::size_t i = 0; i < tables.size(); ++i) {
    if (pub.weights[i] == 0.0) continue;
    for (std::size_t idx = 0; idx < dim; ++idx)
      if ((tables[i].words[idx >> 6] >> (idx & 63)) & 1u)
        mixed.values[idx] += pub.weights[i];
  }
  const double epsilon = error_linf(f, mixed);

  auto set = std::make_shared<PointSet>();
  set->dimension = dim;
  set->points.reserve(tables.size());
  for (const auto& t : tables) set->points.push_back(table_to_point(t));

  ConvexCombination combo;
  combo.set = set;
  for (std::size_t i = 0; i < pub.weights.size(); ++i)
    if (pub.weights[i] > 0.0) combo.support.push_back({i, pub.weights[i]});

  const bool wants_reduction = options.use_exact_reduction.value_or(
      combo.support.size() > dim + 1 && dim <= kAutoReductionMaxDim);
  bool reduction_used = false;
  if (wants_reduction && combo.support.size() > dim + 1) {
    combo = caratheodory_reduce(combo);
    reduction_used = true;
  }

  const SamplingPlan plan = SamplingPlan::for_dimension(
      dim, options.delta, options.eta, options.max_retries);
  const ConvexCombination sparse =
      approx_caratheodory_sample(combo, plan, options.seed);

  PrivateCoinProtocol priv;
  priv.n = pub.n;
  int max_cost = 0;
  for (const auto& e : sparse.support) {
    priv.support.emplace_back(e.weight, pub.protocols[e.index]);
    max_cost = std::max(max_cost, pub.protocols[e.index].declared_cost);
  }
  priv.index_bits = ceil_log2(priv.support.size());
  priv.total_cost = priv.index_bits + max_cost;
  priv.validate();

  // Exhaustive end-to-end check of the compiled protocol's error.
  ProbabilityTable compiled;
  compiled.n = pub.n;
  compiled.values.assign(dim, 0.0);
  for (const auto& e : sparse.support)
    for (std::size_t idx = 0; idx < dim; ++idx)
      if ((tables[e.index].words[idx >> 6] >> (idx & 63)) & 1u)
        compiled.values[idx] += e.weight;

  CompilationReport report;
  report.epsilon_measured = epsilon;
  report.delta_target = options.delta;
  report.error_measured = error_linf(f, compiled);
  report.k = priv.support.size();
  report.index_bits = priv.index_bits;
  report.public_cost = comm_cost(pub);
  report.private_cost = priv.total_cost;
  report.reduction_used = reduction_used;
  report.seed = options.seed;
  return {std::move(priv), report};
}

std::pair<bool, int> run_private_protocol(const PrivateCoinProtocol& p,
                                          std::uint32_t x, std::uint32_t y,
                                          std::uint64_t seed) {
  p.validate();
  const std::uint32_t side = std::uint32_t{1} << p.n;
  if (x >= side || y >= side)
    throw std::invalid_argument("run_private_protocol: input out of range");

  std::mt19937_64 rng(seed);
  const double u = uniform01(rng);
  double acc = 0.0;
  std::size_t chosen = p.support.size() - 1;
  for (std::size_t i = 0; i < p.support.size(); ++i) {
    acc += p.support[i].first;
    if (u < acc) { chosen = i; break; }
  }
  const ProtocolResult r = p.support[chosen].second.evaluate(x, y);
  return {r.output, p.index_bits + r.cost_bits};
}

std::vector<ScalingRow> measured_cost_bound_check(
    const std::vector<int>& n_values, double delta, double eta) {
  std::vector<ScalingRow> rows;
  rows.reserve(n_values.size());
  for (int n : n_values) {
    check_table_guard(n);
    const std::size_t dim = std::size_t{1} << (2 * n);
    const SamplingPlan plan = SamplingPlan::for_dimension(dim, delta, eta);
    rows.push_back({n, plan.k, ceil_log2(plan.k)});
  }
  return rows;
}

}  // namespace caracomm

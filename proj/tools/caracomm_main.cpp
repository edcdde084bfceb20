// Command-line front end: sparsify point files, compile EQUALITY public-coin
// protocols to private coins, Monte-Carlo-verify compiled protocols, and
// print index-cost scaling tables.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "caracomm/equality.hpp"
#include "caracomm/geometry.hpp"
#include "caracomm/json_io.hpp"
#include "caracomm/newman.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitAlgorithm = 3;

std::string fmt_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw caracomm::ParseError("cannot open input file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << text;
}

struct SparsifyArgs {
  std::string in_path;
  std::string out_path;
  double delta = 0.1;
  double eta = 0.01;
  std::uint64_t seed = 0;
  int max_retries = 16;
  bool exact = false;
};

int cmd_sparsify(const SparsifyArgs& a) {
  const caracomm::ConvexCombination input =
      caracomm::combination_from_json(read_file(a.in_path));

  caracomm::ConvexCombination result;
  if (a.exact) {
    result = caracomm::caratheodory_reduce(input);
  } else {
    const auto plan = caracomm::SamplingPlan::for_dimension(
        input.set->dimension, a.delta, a.eta, a.max_retries);
    result = caracomm::approx_caratheodory_sample(input, plan, a.seed);
  }

  const double dist = caracomm::linf_distance(caracomm::eval_combination(result),
                                              caracomm::eval_combination(input));
  if (!a.out_path.empty())
    write_file(a.out_path, caracomm::combination_to_json(result));
  std::cout << "{\"support\": " << result.support.size()
            << ", \"linf_distance\": " << fmt_real(dist) << "}\n";
  return dist <= a.delta ? 0 : kExitAlgorithm;
}

struct NewmanArgs {
  int n = 4;
  int t = 2;
  double delta = 0.1;
  double eta = 0.01;
  std::uint64_t seed = 0;
  bool exact_reduction = false;
  std::string out_path;
};

int cmd_newman(const NewmanArgs& a) {
  const auto [f, pub] = caracomm::build_equality(a.n, a.t);
  caracomm::NewmanOptions opts;
  opts.delta = a.delta;
  opts.eta = a.eta;
  opts.seed = a.seed;
  if (a.exact_reduction) opts.use_exact_reduction = true;
  const auto [priv, report] = caracomm::newman_transform(f, pub, opts);
  const std::string text = caracomm::report_to_json(report);
  if (!a.out_path.empty()) write_file(a.out_path, text);
  std::cout << text;
  return report.guarantee_holds() ? 0 : kExitAlgorithm;
}

struct VerifyArgs {
  int n = 4;
  int t = 2;
  double delta = 0.1;
  double eta = 0.01;
  std::uint64_t seed = 0;
  long trials = 100000;
  std::string out_path;
};

// Recompiles the protocol from the same flags (compilation is deterministic
// given the seed) and checks empirical output frequencies against the
// compiled mixture table on up to 8 diagonal and 8 off-diagonal inputs.
int cmd_verify(const VerifyArgs& a) {
  const auto [f, pub] = caracomm::build_equality(a.n, a.t);
  caracomm::NewmanOptions opts;
  opts.delta = a.delta;
  opts.eta = a.eta;
  opts.seed = a.seed;
  const auto [priv, report] = caracomm::newman_transform(f, pub, opts);
  const caracomm::ProbabilityTable table = priv.mixture();

  const std::uint32_t side = std::uint32_t{1} << a.n;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> inputs;
  for (std::uint32_t x = 0; x < side && x < 8; ++x) inputs.emplace_back(x, x);
  if (side > 1)
    for (std::uint32_t x = 0; x < side && x < 8; ++x)
      inputs.emplace_back(x, (x + 1) % side);

  const double tol = 3.0 * std::sqrt(0.25 / static_cast<double>(a.trials)) + 0.005;
  std::uint64_t run_seed = a.seed;
  bool all_pass = true;
  std::ostringstream out;
  out << "{\"trials\": " << a.trials << ", \"tolerance\": " << fmt_real(tol)
      << ", \"inputs\": [";
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    const auto [x, y] = inputs[i];
    long ones = 0;
    for (long trial = 0; trial < a.trials; ++trial)
      if (caracomm::run_private_protocol(priv, x, y, run_seed++).first) ++ones;
    const double freq = static_cast<double>(ones) / static_cast<double>(a.trials);
    const double expected =
        table.values[(static_cast<std::size_t>(x) << a.n) | y];
    const bool pass = std::abs(freq - expected) <= tol;
    all_pass = all_pass && pass;
    if (i) out << ", ";
    out << "{\"x\": " << x << ", \"y\": " << y
        << ", \"expected\": " << fmt_real(expected)
        << ", \"frequency\": " << fmt_real(freq)
        << ", \"pass\": " << (pass ? "true" : "false") << "}";
  }
  out << "]}\n";
  if (!a.out_path.empty()) write_file(a.out_path, out.str());
  std::cout << out.str();
  return all_pass ? 0 : kExitAlgorithm;
}

int cmd_scaling(const std::vector<int>& n_values, double delta, double eta) {
  const auto rows = caracomm::measured_cost_bound_check(n_values, delta, eta);
  std::cout << "{\"delta\": " << fmt_real(delta) << ", \"rows\": [";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i) std::cout << ", ";
    std::cout << "{\"n\": " << rows[i].n << ", \"k\": " << rows[i].k
              << ", \"index_bits\": " << rows[i].index_bits << "}";
  }
  std::cout << "]}\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Convex-geometry sparsifiers and a public-to-private coin protocol compiler"};
  app.require_subcommand(1);

  SparsifyArgs sp;
  auto* sparsify = app.add_subcommand(
      "sparsify", "Reduce or sample a convex combination from a points file");
  sparsify->add_option("--in", sp.in_path, "input combination JSON")->required();
  sparsify->add_option("--out", sp.out_path, "output combination JSON");
  sparsify->add_option("--delta", sp.delta, "target L-inf error")
      ->check(CLI::PositiveNumber);
  sparsify->add_option("--eta", sp.eta, "failure probability budget")
      ->check(CLI::Range(1e-12, 1.0 - 1e-12));
  sparsify->add_option("--seed", sp.seed, "rng seed (default 0)");
  sparsify->add_option("--max-retries", sp.max_retries)->check(CLI::PositiveNumber);
  sparsify->add_flag("--exact", sp.exact, "exact Caratheodory reduction instead of sampling");

  NewmanArgs nm;
  auto* newman = app.add_subcommand(
      "newman", "Compile public-coin EQUALITY to a private-coin protocol");
  newman->add_option("--n", nm.n, "input length per party")->required();
  newman->add_option("--t", nm.t, "number of hash bits");
  newman->add_option("--delta", nm.delta, "extra error budget")
      ->check(CLI::PositiveNumber);
  newman->add_option("--eta", nm.eta)->check(CLI::Range(1e-12, 1.0 - 1e-12));
  newman->add_option("--seed", nm.seed, "rng seed (default 0)");
  newman->add_option("--out", nm.out_path, "report JSON path");
  newman->add_flag("--exact-reduction", nm.exact_reduction);

  VerifyArgs vf;
  auto* verify = app.add_subcommand(
      "verify", "Monte-Carlo check of a compiled protocol against its mixture table");
  verify->add_option("--n", vf.n)->required();
  verify->add_option("--t", vf.t);
  verify->add_option("--delta", vf.delta)->check(CLI::PositiveNumber);
  verify->add_option("--eta", vf.eta)->check(CLI::Range(1e-12, 1.0 - 1e-12));
  verify->add_option("--seed", vf.seed);
  verify->add_option("--trials", vf.trials)->check(CLI::PositiveNumber);
  verify->add_option("--out", vf.out_path);

  std::vector<int> scaling_n{2, 4, 6, 8};
  double scaling_delta = 0.1;
  double scaling_eta = 0.01;
  auto* scaling = app.add_subcommand("scaling", "Index-cost table over input lengths");
  scaling->add_option("--n", scaling_n, "input lengths");
  scaling->add_option("--delta", scaling_delta)->check(CLI::PositiveNumber);
  scaling->add_option("--eta", scaling_eta)->check(CLI::Range(1e-12, 1.0 - 1e-12));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError&) {
    std::cerr << "error: invalid arguments (run with --help)\n";
    return kExitUsage;
  }

  try {
    if (*sparsify) return cmd_sparsify(sp);
    if (*newman) return cmd_newman(nm);
    if (*verify) return cmd_verify(vf);
    if (*scaling) return cmd_scaling(scaling_n, scaling_delta, scaling_eta);
  } catch (const caracomm::SamplingError& e) {
    std::cerr << "error: " << e.what() << " (best distance "
              << fmt_real(e.best_distance) << ")\n";
    return kExitAlgorithm;
  } catch (const caracomm::ReductionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitAlgorithm;
  } catch (const caracomm::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::length_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

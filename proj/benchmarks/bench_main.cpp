#include <benchmark/benchmark.h>

#include <random>

#include "pcfr/cfr.hpp"
#include "pcfr/games.hpp"
#include "pcfr/metrics.hpp"
#include "pcfr/polytope_rm.hpp"

namespace {

using namespace pcfr;

const ExtensiveFormGame& leduc(int k) {
  static const ExtensiveFormGame k3 = build_leduc({.k = 3});
  static const ExtensiveFormGame k5 = build_leduc({.k = 5});
  return k == 3 ? k3 : k5;
}

void BM_CfrIteration(benchmark::State& state) {
  const ExtensiveFormGame& game = leduc(static_cast<int>(state.range(0)));
  CfrSolver solver(game, Perturbation::uniform(game, 0.01));
  for (auto _ : state) benchmark::DoNotOptimize(solver.iterate());
  state.counters["nodes"] = static_cast<double>(game.num_nodes());
}
BENCHMARK(BM_CfrIteration)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_BestResponse(benchmark::State& state) {
  const ExtensiveFormGame& game = leduc(3);
  const BehavioralStrategy profile = BehavioralStrategy::uniform(game);
  for (auto _ : state) benchmark::DoNotOptimize(best_response(game, profile, 0).value);
}
BENCHMARK(BM_BestResponse)->Unit(benchmark::kMicrosecond);

void BM_MaxInfosetRegret(benchmark::State& state) {
  const ExtensiveFormGame& game = leduc(3);
  CfrSolver solver(game, Perturbation::none(game));
  solver.run(64);
  const BehavioralStrategy profile = solver.average_strategy();
  for (auto _ : state) benchmark::DoNotOptimize(max_infoset_regret(game, profile).value);
}
BENCHMARK(BM_MaxInfosetRegret)->Unit(benchmark::kMillisecond);

void BM_PerturbedKernel(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<double> lower(n, 0.5 / static_cast<double>(n));
  std::vector<double> regrets(n, 0.0), phi(n), x(n);
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  for (double& v : phi) v = g(rng);
  for (auto _ : state) {
    kernel::perturbed_regret_match(regrets, lower, 0.5, x);
    kernel::perturbed_regret_update(regrets, phi, lower, 0.5);
    phi[0] = -phi[0];
    benchmark::DoNotOptimize(x.data());
  }
}
BENCHMARK(BM_PerturbedKernel)->Arg(3)->Arg(10);

void BM_GenericBasisStep(benchmark::State& state) {
  const auto n = static_cast<Eigen::Index>(state.range(0));
  const PerturbationBasis basis = basis_matrix(std::vector<double>(static_cast<std::size_t>(n), 0.5 / n));
  const Eigen::MatrixXd b = basis.matrix();
  RmPlusState s(n, n);
  Eigen::VectorXd grad = Eigen::VectorXd::LinSpaced(n, -1.0, 1.0);
  for (auto _ : state) {
    const Eigen::VectorXd x = rm_plus_step(s, b);
    observe_and_update(s, x, b.transpose() * grad - Eigen::VectorXd::Constant(n, grad.dot(x)));
    grad = -grad;
  }
}
BENCHMARK(BM_GenericBasisStep)->Arg(3)->Arg(10);

}  // namespace

BENCHMARK_MAIN();

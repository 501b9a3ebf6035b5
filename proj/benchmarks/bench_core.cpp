#include <benchmark/benchmark.h>

#include "duelgrad/diagnostics.hpp"
#include "duelgrad/geometry.hpp"
#include "duelgrad/objectives.hpp"
#include "duelgrad/oracle.hpp"
#include "duelgrad/solver.hpp"

using namespace duelgrad;

namespace {

QuadraticObjective quadratic(std::size_t d) {
  std::vector<double> eig(d);
  for (std::size_t i = 0; i < d; ++i) eig[i] = 1.0 / static_cast<double>(i + 1);
  return make_diagonal_quadratic(eig, Vector::Zero(static_cast<Eigen::Index>(d)),
                                 BallDomain(Vector::Zero(static_cast<Eigen::Index>(d)), 1.0));
}

void BM_SampleSphere(benchmark::State& state) {
  Rng rng(1);
  Vector u(state.range(0));
  for (auto _ : state) {
    sample_unit_sphere(rng, u);
    benchmark::DoNotOptimize(u.data());
  }
}
BENCHMARK(BM_SampleSphere)->Arg(2)->Arg(10)->Arg(200);

void BM_Duel(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  const auto obj = quadratic(d);
  const auto tf = TransferFunction::sigmoid(4.0);
  ComparisonOracle oracle(obj, tf, Rng(2));
  Vector x = Vector::Constant(static_cast<Eigen::Index>(d), 0.1);
  Vector y = -x;
  for (auto _ : state) benchmark::DoNotOptimize(oracle.duel(x, y));
}
BENCHMARK(BM_Duel)->Arg(2)->Arg(10)->Arg(200);

void BM_RgdRun(benchmark::State& state) {
  const auto obj = quadratic(2);
  const auto tf = TransferFunction::sign();
  Vector w1(2);
  w1 << 1.0, 0.0;
  const SolverConfig cfg{0.01, 0.01, static_cast<std::uint64_t>(state.range(0)), w1};
  for (auto _ : state) {
    ComparisonOracle oracle(obj, tf, Rng(3));
    Rng rng(4);
    benchmark::DoNotOptimize(rgd_run(cfg, oracle, obj, obj.domain(), rng).min_gap);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_RgdRun)->Arg(10000)->Arg(160000);

void BM_CtildeEstimate(benchmark::State& state) {
  for (auto _ : state) {
    Rng rng(5);
    benchmark::DoNotOptimize(estimate_ctilde(10, static_cast<std::uint64_t>(state.range(0)), rng).scalar());
  }
}
BENCHMARK(BM_CtildeEstimate)->Arg(1 << 16)->Arg(1 << 20)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

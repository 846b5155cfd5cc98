#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "toric/dynamics.hpp"
#include "toric/embedding.hpp"
#include "toric/inclusion.hpp"

using namespace toric;

namespace {

QVec qv(std::initializer_list<int> xs) {
  QVec v;
  for (int x : xs) v.push_back(Rational(x));
  return v;
}

EGraph four_cycle() {
  EGraph g;
  g.n = 2;
  g.vertices = {qv({0, 0}), qv({3, 1}), qv({1, 4}), qv({-2, 2})};
  g.edges = {{0, 1}, {1, 2}, {2, 3}, {3, 0}};
  return g;
}

void BM_rhs(benchmark::State& state) {
  EGraph g = four_cycle();
  PolySystem sys = system_of(g, std::vector<Rational>(4, Rational(1)));
  Eigen::Vector2d x(1.3, 0.7);
  for (auto _ : state) benchmark::DoNotOptimize(rhs(sys, x));
}
BENCHMARK(BM_rhs);

void BM_evaluate_hyperplane(benchmark::State& state) {
  ToricInclusion ti = build_weakly_reversible(four_cycle(), 0.1);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-8, 8);
  for (auto _ : state) {
    Eigen::Vector2d X(u(rng), u(rng));
    benchmark::DoNotOptimize(evaluate_hyperplane(ti, X));
  }
}
BENCHMARK(BM_evaluate_hyperplane);

void BM_membership_sampling(benchmark::State& state) {
  EGraph g = four_cycle();
  SamplerOptions opt;
  opt.samples = (std::uint64_t)state.range(0);
  opt.seed = 42;
  for (auto _ : state)
    benchmark::DoNotOptimize(verify_embedding(g, 0.1, Semantics::hyperplane, opt));
}
BENCHMARK(BM_membership_sampling)->Arg(1000);

void BM_fan_enumeration(benchmark::State& state) {
  QMat normals = {qv({1, 0}), qv({0, 1}), qv({1, 1}), qv({1, -1}), qv({2, 1})};
  normals.resize((size_t)state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(fan_from_hyperplanes(normals));
}
BENCHMARK(BM_fan_enumeration)->DenseRange(2, 5);

}  // namespace

BENCHMARK_MAIN();

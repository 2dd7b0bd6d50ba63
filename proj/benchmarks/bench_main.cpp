#include "torusinv/generators.hpp"
#include "torusinv/pgl2.hpp"
#include "torusinv/relations.hpp"
#include "torusinv/tori.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace torusinv;

namespace {

RatMatrix random_matrix(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> p(-9, 9), q(1, 5);
  RatMatrix g(n, n, Rational(0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = make_rational(p(rng), q(rng));
  for (int i = 0; i < n; ++i) g(i, i) += 20;
  return g;
}

void BM_Det(benchmark::State& st) {
  RatMatrix g = random_matrix(static_cast<int>(st.range(0)), 1);
  for (auto _ : st) benchmark::DoNotOptimize(det(g));
}
BENCHMARK(BM_Det)->DenseRange(2, 8, 2);

void BM_Psi0Vector(benchmark::State& st) {
  RatMatrix g = random_matrix(static_cast<int>(st.range(0)), 2);
  for (auto _ : st) benchmark::DoNotOptimize(psi0_vector(g));
}
BENCHMARK(BM_Psi0Vector)->DenseRange(2, 5);

void BM_RelationKernel(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(relation_kernel_basis(static_cast<int>(st.range(0))));
}
BENCHMARK(BM_RelationKernel)->DenseRange(3, 5)->Unit(benchmark::kMillisecond);

void BM_PsiTorusCubic(benchmark::State& st) {
  TorusFixture fx = build_fixture(IntPoly{Integer(-1), Integer(-1), Integer(0), Integer(1)});
  RatMatrix g = random_matrix(3, 3);
  for (auto _ : st) benchmark::DoNotOptimize(fixture_psi_vector(fx, g));
}
BENCHMARK(BM_PsiTorusCubic);

void BM_PacketExperiment(benchmark::State& st) {
  FlowElement a({1.0, -1.0});
  for (auto _ : st) benchmark::DoNotOptimize(packet_experiment(st.range(0), a, 0.1, 0));
}
BENCHMARK(BM_PacketExperiment)->Arg(10)->Arg(79)->Arg(199)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

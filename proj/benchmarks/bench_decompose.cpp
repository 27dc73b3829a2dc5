#include <benchmark/benchmark.h>

#include "axdecomp/decompose.hpp"
#include "axdecomp/verify.hpp"

namespace {

using namespace axdecomp;

void BM_AxialVector(benchmark::State& state) {
  const Space space(static_cast<std::size_t>(state.range(0)));
  const Instance inst = generate(space, GenKind::equimodular_basis, 42);
  for (auto _ : state)
    benchmark::DoNotOptimize(axial_vector(space, *inst.basis));
}
BENCHMARK(BM_AxialVector)->Arg(4)->Arg(8)->Arg(16)->Arg(32);

void BM_DecomposeInvertible(benchmark::State& state) {
  const Space space(static_cast<std::size_t>(state.range(0)));
  const Instance inst = generate(space, GenKind::invertible, 42);
  for (auto _ : state)
    benchmark::DoNotOptimize(decompose_invertible(space, *inst.matrix));
}
BENCHMARK(BM_DecomposeInvertible)->Arg(4)->Arg(8)->Arg(16);

void BM_DecomposeOrthogonal(benchmark::State& state) {
  const Space space(static_cast<std::size_t>(state.range(0)));
  const Instance inst = generate(space, GenKind::orthogonal, 42);
  for (auto _ : state)
    benchmark::DoNotOptimize(decompose_orthogonal(space, *inst.matrix));
}
BENCHMARK(BM_DecomposeOrthogonal)->Arg(4)->Arg(8)->Arg(16);

}  // namespace

BENCHMARK_MAIN();

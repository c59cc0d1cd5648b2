// Microbenchmarks for the hot paths: dense factorizations, gauge alignment,
// path tracking, and the full bound-evaluation pipeline.
#include <benchmark/benchmark.h>

#include "mptk/bounds_eig.hpp"
#include "mptk/decompositions.hpp"
#include "mptk/gap_profile.hpp"
#include "mptk/path_tracking.hpp"
#include "mptk/rng.hpp"
#include "mptk/subspace.hpp"

using namespace mptk;

namespace {

ComplexMatrix hermitian_input(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  return rng.hermitian_gaussian(n);
}

void BM_EighSorted(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const ComplexMatrix a = hermitian_input(n, 11);
  for (auto _ : state) {
    benchmark::DoNotOptimize(eigh_sorted(a));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_EighSorted)->Arg(8)->Arg(16)->Arg(32)->Complexity(benchmark::oNCubed);

void BM_SvdSorted(benchmark::State& state) {
  Rng rng(13);
  const ComplexMatrix b = rng.gaussian(16, 8);
  for (auto _ : state) {
    benchmark::DoNotOptimize(svd_sorted(b));
  }
}
BENCHMARK(BM_SvdSorted);

void BM_AlignProcrustes(benchmark::State& state) {
  const ComplexMatrix a = hermitian_input(12, 17);
  const ComplexMatrix at = a + 0.05 * hermitian_input(12, 18);
  const ComplexMatrix u_prev = eigh_sorted(a).basis.columns(0, 4);
  const ComplexMatrix u_next = eigh_sorted(at).basis.columns(0, 4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(align_procrustes(u_prev, u_next));
  }
}
BENCHMARK(BM_AlignProcrustes);

void BM_TrackEigPath(benchmark::State& state) {
  const ComplexMatrix a = hermitian_input(8, 21);
  const ComplexMatrix da = 0.05 * hermitian_input(8, 22);
  const BlockPartition partition{{2, 6}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(track_eig_path(a, da, partition, 65));
  }
}
BENCHMARK(BM_TrackEigPath);

void BM_CombinedBoundsPipeline(benchmark::State& state) {
  const ComplexMatrix a = hermitian_input(8, 31);
  const ComplexMatrix da = 0.05 * hermitian_input(8, 32);
  const BlockPartition partition{{2, 6}};
  for (auto _ : state) {
    const EigPath path = track_eig_path(a, da, partition, 65);
    const GapProfile gaps = gap_profile_eig(path);
    benchmark::DoNotOptimize(combined_all_blocks(path, gaps));
    benchmark::DoNotOptimize(combined_single_block(path, gaps));
    benchmark::DoNotOptimize(total_bound(path));
  }
}
BENCHMARK(BM_CombinedBoundsPipeline);

}  // namespace

BENCHMARK_MAIN();

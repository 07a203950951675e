// Microbenchmarks for the hot paths: the block overlap iteration, the
// fixed-point gauge, fidelity, density matrices and the brute-force ansatz
// optimizer.

#include <benchmark/benchmark.h>

#include "mpsrg/geometric.hpp"
#include "mpsrg/models.hpp"
#include "mpsrg/observables.hpp"
#include "mpsrg/transfer.hpp"

using namespace mpsrg;

namespace {

static void BM_DmaxSq(benchmark::State& state) {
  TransferOperator e = transfer_operator(catalog_mps({ModelId::kModel1, 0.7}));
  long L = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(dmax_sq(e, L).value);
}
BENCHMARK(BM_DmaxSq)->Arg(2)->Arg(8)->Arg(32);

static void BM_PerBlock(benchmark::State& state) {
  TransferOperator e = transfer_operator(catalog_mps({ModelId::kModel2, 1.5}));
  for (auto _ : state) benchmark::DoNotOptimize(entanglement_per_block(e, state.range(0)).per_block);
}
BENCHMARK(BM_PerBlock)->Arg(2)->Arg(8);

static void BM_TotalBlock(benchmark::State& state) {
  TransferOperator e = transfer_operator(catalog_mps({ModelId::kModel1, -1.4}));
  for (auto _ : state) benchmark::DoNotOptimize(total_block_entanglement(e, 2, state.range(0)).total);
}
BENCHMARK(BM_TotalBlock)->Arg(2)->Arg(4);

static void BM_FixedPointSpectrum(benchmark::State& state) {
  TransferOperator e = transfer_operator(catalog_mps({ModelId::kAklt, 0.0}));
  for (auto _ : state) benchmark::DoNotOptimize(fixed_point_spectrum(e).values[0]);
}
BENCHMARK(BM_FixedPointSpectrum);

static void BM_FidelityPerSite(benchmark::State& state) {
  UniformMps a = catalog_mps({ModelId::kModel1, 0.4});
  UniformMps b = catalog_mps({ModelId::kModel1, 1.9});
  for (auto _ : state) benchmark::DoNotOptimize(fidelity_per_site(a, b));
}
BENCHMARK(BM_FidelityPerSite);

static void BM_TwoSiteRdm(benchmark::State& state) {
  UniformMps mps = catalog_mps({ModelId::kModel1, 0.7});
  for (auto _ : state) benchmark::DoNotOptimize(two_site_rdm(mps).rho(0, 0));
}
BENCHMARK(BM_TwoSiteRdm);

static void BM_BruteForce(benchmark::State& state) {
  StateVector sv = state_vector(catalog_mps({ModelId::kModel1, -1.2}), state.range(0));
  Vector psi = sv.amplitudes / sv.amplitudes.norm();
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        brute_force_geometric(psi, 2, AnsatzKind::kArbitrary, 1, 8, kBruteTol, 3).total);
  }
}
BENCHMARK(BM_BruteForce)->Arg(6)->Arg(8);

}  // namespace

BENCHMARK_MAIN();

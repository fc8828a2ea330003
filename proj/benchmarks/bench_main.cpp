#include <benchmark/benchmark.h>

#include <random>

#include "dissim/constructions.hpp"
#include "dissim/lindblad.hpp"
#include "dissim/metrics.hpp"
#include "dissim/numkernel.hpp"

namespace {

using namespace dissim;

ComplexMatrix seeded_hermitian(int d) {
  std::mt19937_64 rng(77);
  std::normal_distribution<double> gauss(0.0, 1.0);
  ComplexMatrix m(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) m(i, j) = Complex(gauss(rng), gauss(rng));
  }
  return 0.5 * (m + m.adjoint());
}

void BM_expm(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const ComplexMatrix m = Complex(0, 1) * seeded_hermitian(d);
  for (auto _ : state) {
    benchmark::DoNotOptimize(expm(m));
  }
}
BENCHMARK(BM_expm)->Arg(4)->Arg(16)->Arg(64);

void BM_liouvillian(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const ComplexMatrix h = seeded_hermitian(d);
  const Lindbladian l(d, h, {0.3 * seeded_hermitian(d), 0.2 * seeded_hermitian(d)});
  for (auto _ : state) {
    benchmark::DoNotOptimize(liouvillian(l));
  }
}
BENCHMARK(BM_liouvillian)->Arg(2)->Arg(4)->Arg(8);

void BM_propagator(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const Lindbladian l(d, seeded_hermitian(d), {0.3 * seeded_hermitian(d)});
  const Superoperator gen = liouvillian(l);
  for (auto _ : state) {
    benchmark::DoNotOptimize(propagator(gen, 1.0));
  }
}
BENCHMARK(BM_propagator)->Arg(2)->Arg(4);

void BM_diamond_sdp_qubit(benchmark::State& state) {
  const ComplexMatrix h = 0.5 * pauli_z();
  const Lindbladian l = mimic_single(h, 0.01).lindbladian;
  const Superoperator fast = propagator(liouvillian(l), 100.0);
  const Superoperator target =
      propagator(liouvillian(Lindbladian::hamiltonian_only(h)), 1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        diamond_distance(fast, target, DistanceMethod::sdp));
  }
}
BENCHMARK(BM_diamond_sdp_qubit);

void BM_uniform_error(benchmark::State& state) {
  const ComplexMatrix h = 0.5 * pauli_z();
  const Lindbladian l = mimic_single(h, 0.025).lindbladian;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        uniform_error(l, h, 2.0, 0.025, 16, DistanceMethod::sdp));
  }
}
BENCHMARK(BM_uniform_error);

}  // namespace

BENCHMARK_MAIN();

#include <benchmark/benchmark.h>

#include <random>

#include "spinorbit/fock.hpp"
#include "spinorbit/field.hpp"
#include "spinorbit/interferometer.hpp"

using namespace spinorbit;

namespace {

const PoincareAngles kBalanced{1.5707963267948966, 3.141592653589793,
                               1.5707963267948966, 0.4};

void BM_ProductAmplitudes(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(product_amplitudes(kBalanced, 1.0));
    }
}
BENCHMARK(BM_ProductAmplitudes);

void BM_Propagate(benchmark::State& state) {
    const SpinOrbitAmplitudes amps = product_amplitudes(kBalanced, 1.0);
    const PortPair in{amps, amps};
    double delta = 0.0;
    for (auto _ : state) {
        delta += 1e-6;
        benchmark::DoNotOptimize(propagate(in, delta));
    }
}
BENCHMARK(BM_Propagate);

void BM_PsiFromBasis(benchmark::State& state) {
    const SpinOrbitAmplitudes amps = product_amplitudes(kBalanced, 1.0);
    double phi = 0.0;
    for (auto _ : state) {
        phi += 1e-3;
        benchmark::DoNotOptimize(psi_from_basis(amps, DeltaSign::positive, 1.1, phi, 1.0));
    }
}
BENCHMARK(BM_PsiFromBasis);

void BM_PsiParameterized(benchmark::State& state) {
    double phi = 0.0;
    for (auto _ : state) {
        phi += 1e-3;
        benchmark::DoNotOptimize(
            psi_parameterized(kBalanced, DeltaSign::positive, 1.1, phi, 1.0, 1.0));
    }
}
BENCHMARK(BM_PsiParameterized);

void BM_GridRender(benchmark::State& state) {
    const SpinOrbitAmplitudes amps = product_amplitudes(kBalanced, 1.0);
    const GridSpec spec{4.0, static_cast<int>(state.range(0)), 1.0};
    for (auto _ : state) {
        benchmark::DoNotOptimize(sample_field(spec, [&](double r, double phi) {
            return psi_from_basis(amps, DeltaSign::positive, r, phi, 1.0);
        }));
    }
}
BENCHMARK(BM_GridRender)->Arg(65)->Arg(257);

void BM_BiphotonSubstitution(benchmark::State& state) {
    const SpinOrbitAmplitudes amps = product_amplitudes(kBalanced, 1.0);
    const OperatorPolynomial input = biphoton_input(amps);
    double delta = 0.0;
    for (auto _ : state) {
        delta += 1e-6;
        benchmark::DoNotOptimize(substitute_output_operators(input, delta));
    }
}
BENCHMARK(BM_BiphotonSubstitution);

} // namespace

BENCHMARK_MAIN();

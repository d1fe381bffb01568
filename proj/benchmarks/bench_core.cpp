#include <benchmark/benchmark.h>

#include <random>

#include "nucc/builder.hpp"
#include "nucc/jordan_wigner.hpp"
#include "nucc/resources.hpp"
#include "nucc/sim.hpp"

namespace {

static void BM_HadamardLayer(benchmark::State& state) {
    const auto n = static_cast<uint32_t>(state.range(0));
    nucc::StateVector psi(n);
    for (auto _ : state) {
        for (uint32_t q = 0; q < n; ++q) {
            nucc::apply_gate(psi, nucc::Gate::h(q));
        }
        benchmark::DoNotOptimize(psi.amplitudes().data());
    }
    state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_HadamardLayer)->DenseRange(8, 20, 4);

static void BM_PauliMultiply(benchmark::State& state) {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> sym(0, 3);
    const uint32_t n = 12;
    nucc::PauliTermSum a(n), b(n);
    for (int t = 0; t < 24; ++t) {
        nucc::PauliString s(n), r(n);
        for (uint32_t q = 0; q < n; ++q) {
            s.set_op(q, static_cast<nucc::Pauli>(sym(rng)));
            r.set_op(q, static_cast<nucc::Pauli>(sym(rng)));
        }
        a.add(s, 0.25);
        b.add(r, -0.5);
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(nucc::multiply(a, b));
    }
}
BENCHMARK(BM_PauliMultiply);

static void BM_JwDoubleTransform(benchmark::State& state) {
    const auto n = static_cast<uint32_t>(state.range(0));
    nucc::FermionProduct prod{{{n - 2, true}, {n - 1, true}, {0, false},
                               {1, false}},
                              1.0};
    for (auto _ : state) {
        benchmark::DoNotOptimize(nucc::jw_transform(prod, n));
    }
}
BENCHMARK(BM_JwDoubleTransform)->DenseRange(8, 16, 4);

static void BM_DoubleBlockPostselect(benchmark::State& state) {
    nucc::ExcitationTerm term{{4, 5}, {0, 1}, -0.12};
    nucc::StatePrepPlan plan;
    plan.n_system_qubits = 8;
    plan.reference_occupation = 0b1111;
    plan.blocks.emplace_back(term, nucc::amplitude_to_angle(term.amplitude));
    const nucc::CircuitIR circ = nucc::assemble_circuit(plan, true);
    const nucc::StateVector init(circ.n_qubits());
    for (auto _ : state) {
        benchmark::DoNotOptimize(nucc::run_postselected(circ, init));
    }
}
BENCHMARK(BM_DoubleBlockPostselect);

static void BM_EnumerateExcitations(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(nucc::enumerate_excitations(16, 10));
    }
}
BENCHMARK(BM_EnumerateExcitations);

}  // namespace

BENCHMARK_MAIN();

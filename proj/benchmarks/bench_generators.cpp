#include <benchmark/benchmark.h>

#include "fj/compiler.hpp"
#include "fj/generator.hpp"
#include "fj/projective.hpp"

namespace {

const char* kBigPrime = "38685626227668133590597803";

fj::FJProgram big_program() {
    const fj::Nat p(kBigPrime);
    const fj::Nat cof = fj::projective_group_order(p, 3);
    fj::CompileOptions opts;
    opts.hint = fj::known_factorization(cof, {{cof, 1}});
    return fj::compile(fj::companion_matrix(fj::FpPoly::parse(fj::PrimeField(p), "x^3-x-1")), opts);
}

fj::FJProgram small_program() {
    return fj::compile(fj::companion_matrix(fj::FpPoly::parse(fj::PrimeField(fj::Nat(5)), "x^3+3*x+3")));
}

void run_fj(benchmark::State& state, const fj::FJProgram& prog) {
    fj::AffinePoint x(prog.n(), fj::Nat(0));
    for (auto _ : state) {
        x = fj::eval(prog, x);
        benchmark::DoNotOptimize(x);
    }
    state.counters["coords"] = benchmark::Counter(static_cast<double>(state.iterations() * prog.n()), benchmark::Counter::kIsRate);
}

void run_icg(benchmark::State& state, const fj::Nat& p) {
    fj::ICGState icg(fj::PrimeField(p), 1, 1);
    for (auto _ : state) benchmark::DoNotOptimize(icg.next());
    state.counters["coords"] = benchmark::Counter(static_cast<double>(state.iterations()), benchmark::Counter::kIsRate);
}

void BM_FJ_F5(benchmark::State& state) {
    static const auto prog = small_program();
    run_fj(state, prog);
}

void BM_ICG_F5(benchmark::State& state) { run_icg(state, fj::Nat(5)); }

void BM_FJ_86bit(benchmark::State& state) {
    static const auto prog = big_program();
    run_fj(state, prog);
}

void BM_ICG_86bit(benchmark::State& state) { run_icg(state, fj::Nat(kBigPrime)); }

BENCHMARK(BM_FJ_F5);
BENCHMARK(BM_ICG_F5);
BENCHMARK(BM_FJ_86bit);
BENCHMARK(BM_ICG_86bit);

}  // namespace
BENCHMARK_MAIN();

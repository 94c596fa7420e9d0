#include <benchmark/benchmark.h>

#include <random>

#include "hsolve/catalog.hpp"
#include "hsolve/positivity.hpp"
#include "hsolve/quaternionic_double.hpp"

using namespace hsolve;

namespace {

QMatrix random_matrix(std::mt19937& gen, int n) {
    QMatrix m(n, n);
    std::uniform_int_distribution<int> num(-5, 5);
    std::uniform_int_distribution<int> den(1, 4);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Rat r(num(gen), den(gen));
            r.canonicalize();
            m.at(i, j) = r;
        }
    return m;
}

DoubleResult kodaira_double() {
    AlgebraFile kod = catalog_entry("kodaira");
    const LinearOperator& i = kod.operators.at("I");
    return quaternionic_double(kod.algebra, i, nabla_plus(kod.algebra, i));
}

void BM_rref(benchmark::State& state) {
    std::mt19937 gen(1);
    int n = static_cast<int>(state.range(0));
    QMatrix m = random_matrix(gen, n);
    for (auto _ : state) {
        QMatrix copy = m;
        benchmark::DoNotOptimize(copy.rref_in_place());
    }
}
BENCHMARK(BM_rref)->Arg(8)->Arg(16)->Arg(28);

void BM_charpoly(benchmark::State& state) {
    std::mt19937 gen(2);
    int n = static_cast<int>(state.range(0));
    QMatrix m = random_matrix(gen, n);
    for (auto _ : state) benchmark::DoNotOptimize(charpoly(m));
}
BENCHMARK(BM_charpoly)->Arg(4)->Arg(8);

void BM_betti_kodaira_double(benchmark::State& state) {
    DoubleResult d = kodaira_double();
    for (auto _ : state) {
        CEComplex ce(d.algebra);
        benchmark::DoNotOptimize(ce.betti_numbers());
    }
}
BENCHMARK(BM_betti_kodaira_double);

void BM_h_filtration(benchmark::State& state) {
    DoubleResult d = kodaira_double();
    for (auto _ : state) benchmark::DoNotOptimize(h_filtration(d.algebra, d.structure));
}
BENCHMARK(BM_h_filtration);

void BM_integrability_double(benchmark::State& state) {
    DoubleResult d = kodaira_double();
    for (auto _ : state) benchmark::DoNotOptimize(is_integrable(d.algebra, d.structure.J));
}
BENCHMARK(BM_integrability_double);

void BM_exceptional_height1(benchmark::State& state) {
    DoubleResult d = kodaira_double();
    for (auto _ : state)
        benchmark::DoNotOptimize(exceptional_directions(d.algebra, d.structure, 1));
}
BENCHMARK(BM_exceptional_height1);

}  // namespace

BENCHMARK_MAIN();

#include <benchmark/benchmark.h>

#include <random>

#include "weil/descent.hpp"
#include "weil/local_symbols.hpp"
#include "weil/rationality.hpp"

using namespace weil;

namespace {

WeilModel model(long p, int f, int m = 1) {
    const FqField& F = FqField::get(p, f);
    return WeilModel(SymplecticSpace(F, m), AdditiveCharacter(F, default_coeff_field(p)));
}

void BM_CycloMul(benchmark::State& st) {
    CoeffField K = CoeffField::rational(st.range(0));
    std::mt19937_64 rng(1);
    std::vector<mpq_class> a(K.degree()), b(K.degree());
    for (auto& x : a) x = static_cast<long>(rng() % 1000);
    for (auto& x : b) x = mpq_class(static_cast<long>(rng() % 1000), 7);
    CycloNum x(K, a), y(K, b);
    for (auto _ : st) benchmark::DoNotOptimize(x * y);
}
BENCHMARK(BM_CycloMul)->Arg(5)->Arg(13)->Arg(20)->Arg(52);

void BM_CycloInverse(benchmark::State& st) {
    CoeffField K = CoeffField::rational(st.range(0));
    CycloNum x = K.zeta() + K.from_int(3) * K.zeta(2) - K.one();
    for (auto _ : st) benchmark::DoNotOptimize(x.inverse());
}
BENCHMARK(BM_CycloInverse)->Arg(5)->Arg(20)->Arg(52);

void BM_SpFactor(benchmark::State& st) {
    SymplecticSpace s(FqField::get(st.range(0), 1), static_cast<int>(st.range(1)));
    std::mt19937_64 rng(3);
    std::vector<FqMat> gs;
    for (int i = 0; i < 64; ++i) gs.push_back(random_sp_element(s, rng));
    std::size_t i = 0;
    for (auto _ : st) benchmark::DoNotOptimize(sp_factor(s, gs[i++ % gs.size()]));
}
BENCHMARK(BM_SpFactor)->Args({5, 1})->Args({3, 2})->Args({7, 2});

void BM_WeilOperator(benchmark::State& st) {
    WeilModel w = model(st.range(0), 1, static_cast<int>(st.range(1)));
    std::mt19937_64 rng(4);
    std::vector<FqMat> gs;
    for (int i = 0; i < 16; ++i) gs.push_back(random_sp_element(w.space(), rng));
    std::size_t i = 0;
    for (auto _ : st) benchmark::DoNotOptimize(w.omega(gs[i++ % gs.size()]));
}
BENCHMARK(BM_WeilOperator)->Args({5, 1})->Args({13, 1})->Args({3, 2});

void BM_CharacterField(benchmark::State& st) {
    WeilModel w = model(st.range(0), static_cast<int>(st.range(1)));
    MarkedRep r = w.rep(Part::odd);
    for (auto _ : st) benchmark::DoNotOptimize(character_field(r));
}
BENCHMARK(BM_CharacterField)->Args({5, 1})->Args({7, 1})->Args({3, 2})->Unit(benchmark::kMillisecond);

void BM_DescentWeil(benchmark::State& st) {
    WeilModel w = model(st.range(0), 1);
    for (auto _ : st) benchmark::DoNotOptimize(fixed_points(descent_datum_weil(w)));
}
BENCHMARK(BM_DescentWeil)->Arg(3)->Arg(7)->Arg(11)->Unit(benchmark::kMillisecond);

void BM_RealiseOdd(benchmark::State& st) {
    SymplecticSpace s(FqField::get(st.range(0), 1), 1);
    for (auto _ : st) benchmark::DoNotOptimize(realise_odd(s));
}
BENCHMARK(BM_RealiseOdd)->Arg(5)->Arg(13)->Unit(benchmark::kMillisecond);

void BM_NormSearchExhaust(benchmark::State& st) {
    // Q(i)/Q has no element of norm -1, so the whole box is scanned
    CoeffField K = CoeffField::rational(4);
    NormTower t = make_tower(SubfieldTag::whole(K), SubfieldTag::prime(K), 3);
    std::size_t n = 0;
    for (auto _ : st) n = search_norm_minus_one(t, st.range(0)).candidates;
    st.counters["candidates"] = static_cast<double>(n);
}
BENCHMARK(BM_NormSearchExhaust)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_HilbertSymbol(benchmark::State& st) {
    std::mt19937_64 rng(5);
    for (auto _ : st) {
        long a = static_cast<long>(rng() % 20001) - 10000, b = static_cast<long>(rng() % 20001) - 10000;
        if (!a || !b) continue;
        benchmark::DoNotOptimize(hilbert_symbol(a, b, Place::prime(2)));
    }
}
BENCHMARK(BM_HilbertSymbol);

} // namespace

BENCHMARK_MAIN();

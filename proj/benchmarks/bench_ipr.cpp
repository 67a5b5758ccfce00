// Microbenchmarks for the hot paths: modular exponentiation, Brent rho,
// bound solving, root generation, and the Lucas test. Sizes are bit
// lengths unless noted. All inputs are seeded so runs are comparable.

#include <benchmark/benchmark.h>

#include <cstdint>
#include <map>

#include "ipr/bounds.hpp"
#include "ipr/composite_order.hpp"
#include "ipr/factorization.hpp"
#include "ipr/lucas.hpp"
#include "ipr/natural.hpp"
#include "ipr/primitive_root.hpp"
#include "ipr/rng.hpp"

namespace {

using ipr::Natural;

Natural prime_with_bits(unsigned bits, std::uint64_t seed) {
    static std::map<std::pair<unsigned, std::uint64_t>, Natural> cache;
    const auto key = std::make_pair(bits, seed);
    const auto hit = cache.find(key);
    if (hit != cache.end()) return hit->second;
    ipr::SeededRng rng(seed);
    for (;;) {
        Natural p = (Natural(1) << (bits - 1)) | rng.below(Natural(1) << (bits - 1)) | 1;
        while (ipr::bit_length(p) == bits) {
            if (ipr::probable_prime_64(p, rng)) return cache.emplace(key, p).first->second;
            p += 2;
        }
    }
}

void BM_modexp(benchmark::State& state) {
    const unsigned bits = static_cast<unsigned>(state.range(0));
    const Natural m = prime_with_bits(bits, 7001);
    ipr::SeededRng rng(7002);
    const Natural base = rng.in_range(2, m - 2);
    const Natural expo = rng.in_range(2, m - 2);
    for (auto _ : state) benchmark::DoNotOptimize(ipr::modexp(base, expo, m));
}
BENCHMARK(BM_modexp)->Arg(64)->Arg(256)->Arg(1024);

// Semiprime with two factors of range(0) bits each; the rng is reseeded per
// iteration so every split replays the same offset schedule.
void BM_rho_split(benchmark::State& state) {
    const unsigned bits = static_cast<unsigned>(state.range(0));
    const Natural n = prime_with_bits(bits, 7101) * prime_with_bits(bits, 7103);
    for (auto _ : state) {
        ipr::SeededRng rng(7105);
        benchmark::DoNotOptimize(ipr::rho_split(n, std::uint64_t(1) << 24, rng));
    }
}
BENCHMARK(BM_rho_split)->Arg(20)->Arg(28)->Unit(benchmark::kMillisecond);

void BM_solve_bound(benchmark::State& state) {
    const unsigned bits = static_cast<unsigned>(state.range(0));
    const Natural p = prime_with_bits(bits, 7201);
    for (auto _ : state) benchmark::DoNotOptimize(ipr::solve_bound(p, 0x1p-40));
}
BENCHMARK(BM_solve_bound)->Arg(64)->Arg(256)->Arg(1024);

void BM_fast_root(benchmark::State& state) {
    const unsigned bits = static_cast<unsigned>(state.range(0));
    const Natural p = prime_with_bits(bits, 7301);
    for (auto _ : state) {
        ipr::SeededRng rng(7303);
        benchmark::DoNotOptimize(ipr::fast_root(p, rng));
    }
}
BENCHMARK(BM_fast_root)->Arg(128)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_industrial_root(benchmark::State& state) {
    const unsigned bits = static_cast<unsigned>(state.range(0));
    const Natural p = prime_with_bits(bits, 7401);
    for (auto _ : state) {
        ipr::SeededRng rng(7403);
        benchmark::DoNotOptimize(ipr::industrial_root(p, rng));
    }
}
BENCHMARK(BM_industrial_root)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_lucas_test(benchmark::State& state) {
    const unsigned bits = static_cast<unsigned>(state.range(0));
    const Natural p = prime_with_bits(bits, 7501);
    for (auto _ : state) {
        ipr::SeededRng rng(7503);
        benchmark::DoNotOptimize(ipr::lucas_test(p, 0x1p-40, rng));
    }
}
BENCHMARK(BM_lucas_test)->Arg(32)->Arg(48)->Arg(64)->Unit(benchmark::kMillisecond);

// 45045 = 3^2 * 5 * 7 * 11 * 13: a modulus with a rich divisor lattice.
void BM_order_spectrum(benchmark::State& state) {
    const std::vector<ipr::FactorPair> f{{Natural(3), 2},
                                         {Natural(5), 1},
                                         {Natural(7), 1},
                                         {Natural(11), 1},
                                         {Natural(13), 1}};
    for (auto _ : state) benchmark::DoNotOptimize(ipr::order_spectrum(f));
}
BENCHMARK(BM_order_spectrum);

}  // namespace

BENCHMARK_MAIN();

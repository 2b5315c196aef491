#include <benchmark/benchmark.h>

#include <random>

#include "tcert/int_series.hpp"
#include "tcert/lattice.hpp"
#include "tcert/primes.hpp"

using namespace tcert;

namespace {

std::vector<mpz_class> random_coeffs(std::size_t n, int bits, unsigned seed) {
  gmp_randclass gr(gmp_randinit_default);
  gr.seed(seed);
  std::vector<mpz_class> v(n);
  for (auto& x : v) x = gr.get_z_bits(bits) - (mpz_class(1) << (bits - 1));
  return v;
}

void BM_MulSchoolbook(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const auto a = random_coeffs(n, 256, 1), b = random_coeffs(n, 256, 2);
  for (auto _ : st) benchmark::DoNotOptimize(mul_schoolbook(a, b, n));
  st.SetComplexityN(st.range(0));
}
BENCHMARK(BM_MulSchoolbook)->RangeMultiplier(2)->Range(32, 1024)->Complexity();

void BM_MulKronecker(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const auto a = random_coeffs(n, 256, 1), b = random_coeffs(n, 256, 2);
  for (auto _ : st) benchmark::DoNotOptimize(mul_kronecker(a, b, n));
  st.SetComplexityN(st.range(0));
}
BENCHMARK(BM_MulKronecker)->RangeMultiplier(2)->Range(32, 1024)->Complexity();

void BM_JExpansion(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(j_expansion(st.range(0)));
}
BENCHMARK(BM_JExpansion)->Arg(100)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_Lll(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  std::mt19937_64 rng(5);
  IntMatrix base(n, std::vector<mpz_class>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) base[i][j] = static_cast<long>(rng() % 2001) - 1000;
    base[i][i] += 100000;
  }
  for (auto _ : st) {
    IntMatrix b = base;
    lll_reduce(b);
    benchmark::DoNotOptimize(b);
  }
}
BENCHMARK(BM_Lll)->Arg(8)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_Sieve(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(PrimeTable(static_cast<std::uint64_t>(st.range(0))));
}
BENCHMARK(BM_Sieve)->Arg(100000)->Arg(1000000)->Unit(benchmark::kMillisecond);

void BM_PrimeBounds(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(certify_prime_bounds(static_cast<std::uint64_t>(st.range(0))));
}
BENCHMARK(BM_PrimeBounds)->Arg(100000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

#include <benchmark/benchmark.h>

#include "sectorlab/belyi_monodromy.hpp"
#include "sectorlab/free_moments.hpp"
#include "sectorlab/matrix_ensembles.hpp"
#include "sectorlab/quotient_spectra.hpp"
#include "sectorlab/spectral_measures.hpp"

using namespace sectorlab;

static void BM_Eigenvalues(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const auto a = sample_gue(m, {1, 0});
  for (auto _ : state) benchmark::DoNotOptimize(hermitian_eigenvalues(a));
}
BENCHMARK(BM_Eigenvalues)->Arg(64)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

static void BM_SphereSample(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  std::uint64_t t = 0;
  for (auto _ : state) benchmark::DoNotOptimize(sample_sphere_pair(m, {t++, 0}));
}
BENCHMARK(BM_SphereSample)->Arg(128)->Arg(512)->Unit(benchmark::kMillisecond);

static void BM_PairingDP(benchmark::State& state) {
  const auto len = static_cast<std::size_t>(state.range(0));
  std::vector<Generator> seq(len);
  for (std::size_t i = 0; i < len; ++i) seq[i] = (i * 7 / 3) % 2 ? Generator::X : Generator::Y;
  for (auto _ : state) benchmark::DoNotOptimize(semicircular_mixed_moment(seq));
}
BENCHMARK(BM_PairingDP)->Arg(12)->Arg(24)->Arg(48);

static void BM_FreeWordMoments(benchmark::State& state) {
  const auto w = parse_polynomial("X*Y + Y*X");
  for (auto _ : state) benchmark::DoNotOptimize(free_word_moments(w, static_cast<unsigned>(state.range(0))));
}
BENCHMARK(BM_FreeWordMoments)->Arg(6)->Arg(8);

static void BM_Enumerate(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_covers(d, true));
}
BENCHMARK(BM_Enumerate)->DenseRange(3, 6)->Unit(benchmark::kMillisecond);

static void BM_QuotientLaw(benchmark::State& state) {
  const auto covers = enumerate_covers(6, true);
  std::vector<FiniteQuotient> quotients;
  for (const auto& c : covers) {
    if (c.galois) quotients.push_back(quotient_from_cover(c));
  }
  const auto w = parse_polynomial("X*Y + Y*X");
  for (auto _ : state) {
    for (const auto& q : quotients) benchmark::DoNotOptimize(quotient_spectral_law(q, w));
  }
}
BENCHMARK(BM_QuotientLaw)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();

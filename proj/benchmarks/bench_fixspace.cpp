#include <benchmark/benchmark.h>

#include <fixspace/bounds.hpp>
#include <fixspace/chartab.hpp>
#include <fixspace/gensearch.hpp>
#include <fixspace/library.hpp>
#include <fixspace/weights.hpp>

using namespace fixspace;

namespace {

GroupLibrary& lib() {
  static GroupLibrary l;
  return l;
}

void BM_ConjugacyClasses(benchmark::State& st) {
  const auto G = lib().group("A" + std::to_string(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(conjugacy_classes(*G).size());
}
BENCHMARK(BM_ConjugacyClasses)->Arg(6)->Arg(7)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_CharacterTable(benchmark::State& st) {
  const auto G = lib().group("A" + std::to_string(st.range(0)));
  const ConjugacyClasses cls = conjugacy_classes(*G);
  for (auto _ : st) benchmark::DoNotOptimize(character_table(*G, cls).degrees.size());
}
BENCHMARK(BM_CharacterTable)->Arg(5)->Arg(6)->Arg(7)->Unit(benchmark::kMillisecond);

void BM_FindTriple(benchmark::State& st) {
  const auto G = lib().group("A9");
  SearchOptions opt;
  for (auto _ : st) {
    opt.seed = static_cast<std::uint64_t>(st.iterations()) + 1;
    benchmark::DoNotOptimize(find_triple(*G, 2, opt).attempts);
  }
}
BENCHMARK(BM_FindTriple)->Unit(benchmark::kMillisecond);

void BM_ExhaustiveA5(benchmark::State& st) {
  const auto G = lib().group("A5");
  for (auto _ : st) benchmark::DoNotOptimize(exhaustive_triple_search(*G, 5).pairs_tested);
}
BENCHMARK(BM_ExhaustiveA5)->Unit(benchmark::kMillisecond);

void BM_MinFixDim(benchmark::State& st) {
  const MatRep R = build_rep(parse_module_spec("(deleted (perm A8) :field (gf 7))"), lib());
  const ConjugacyClasses cls = conjugacy_classes(R.group());
  for (auto _ : st) benchmark::DoNotOptimize(min_semisimple_fixdim(R, cls).dim);
}
BENCHMARK(BM_MinFixDim)->Unit(benchmark::kMillisecond);

void BM_ScottPair(benchmark::State& st) {
  const MatRep R = build_rep(parse_module_spec("(sym 4 (explicit SL2_7))"), lib());
  SeedStream rng(1);
  for (auto _ : st) {
    const Perm x = R.group().random_element(rng);
    const Perm y = R.group().random_element(rng);
    benchmark::DoNotOptimize(scott_check(R, x, y).holds);
  }
}
BENCHMARK(BM_ScottPair)->Unit(benchmark::kMicrosecond);

void BM_WeightMultiset(benchmark::State& st) {
  const RootSystem rs = RootSystem::parse("D4");
  const Weight lambda{st.range(0), 1, st.range(0), 1};
  for (auto _ : st) benchmark::DoNotOptimize(weight_multiset(rs, lambda).total());
}
BENCHMARK(BM_WeightMultiset)->Arg(0)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_PhiStar(benchmark::State& st) {
  for (auto _ : st)
    for (unsigned n = 2; n <= 30; ++n) benchmark::DoNotOptimize(phi_star(n, 3));
}
BENCHMARK(BM_PhiStar)->Unit(benchmark::kMicrosecond);

} // namespace

BENCHMARK_MAIN();

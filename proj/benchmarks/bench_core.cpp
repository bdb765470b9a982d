#include <benchmark/benchmark.h>

#include <random>

#include "segre/blowup.hpp"
#include "segre/quadric.hpp"

using namespace segre;

namespace {

// Shared fixture, built once: levels 2 and 3 without the heavy line scan.
Tower& tower3() {
  static Tower t = [] {
    TowerOptions opts;
    opts.q = 3;
    opts.max_k = 3;
    opts.lines_at_top = false;
    return Tower::build(opts);
  }();
  return t;
}

}  // namespace

static void BM_Gf3Rank(benchmark::State& state) {
  std::mt19937 rng(5);
  std::vector<GfVec> rows(37, GfVec(8));
  for (auto& r : rows)
    for (auto& x : r) x = static_cast<uint8_t>(rng() % 3);
  DenseMatrix m = DenseMatrix::from_rows(3, rows);
  for (auto _ : state) benchmark::DoNotOptimize(m.rank());
}
BENCHMARK(BM_Gf3Rank);

static void BM_TensorCoordinates(benchmark::State& state) {
  SegreVariety v = SegreVariety::build(3, 4);
  uint16_t p = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(v.tensor_coordinates(p));
    p = static_cast<uint16_t>((p + 37) & 255u);
  }
}
BENCHMARK(BM_TensorCoordinates);

static void BM_IsHyperplaneK3(benchmark::State& state) {
  const Level& l3 = tower3().level(3);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(is_hyperplane(l3.v, l3.hyps.mask(i)));
    i = (i + 1) % l3.hyps.size();
  }
}
BENCHMARK(BM_IsHyperplaneK3);

// The inner kernel of Algorithm 1: one pair's candidate scan over the whole
// k = 3 store (3424 word masks).
static void BM_PairCandidateScan(benchmark::State& state) {
  const Level& l3 = tower3().level(3);
  const std::vector<uint64_t>& m = l3.hyps.word_masks();
  std::size_t i = 1, j = 2;
  std::vector<uint32_t> cand;
  for (auto _ : state) {
    cand.clear();
    uint64_t core = m[i] & m[j];
    for (std::size_t h = 0; h < m.size(); ++h)
      if ((m[h] & m[i]) == core && (m[h] & m[j]) == core && h != i && h != j)
        cand.push_back(static_cast<uint32_t>(h));
    benchmark::DoNotOptimize(cand.data());
    j = (j + 1) % m.size();
    if (j <= i) j = i + 1;
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(m.size()));
}
BENCHMARK(BM_PairCandidateScan);

static void BM_ProjectivityK3(benchmark::State& state) {
  const Level& l3 = tower3().level(3);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(projectivity(l3.v, l3.hyps.mask(i)));
    i = (i + 7) % l3.hyps.size();
  }
}
BENCHMARK(BM_ProjectivityK3);

static void BM_BlowupDualK3(benchmark::State& state) {
  const Level& l2 = tower3().level(2);
  static LineStore lines = find_lines(l2.v, l2.hyps, l2.hyps.all_ids(), 1);
  auto perms = layer_permutations(4);
  std::size_t li = 0, pi = 0;
  for (auto _ : state) {
    if (!lines.projective[li]) {
      li = (li + 1) % lines.size();
      continue;
    }
    benchmark::DoNotOptimize(blowup_dual_ordinary(l2.hyps, lines.members[li], perms[pi]));
    pi = (pi + 1) % perms.size();
    if (pi == 0) li = (li + 1) % lines.size();
  }
}
BENCHMARK(BM_BlowupDualK3);

static void BM_WordPermApply(benchmark::State& state) {
  const Level& l3 = tower3().level(3);
  std::vector<GroupGenerator> gens = generators(l3.v);
  WordPerm wp = make_word_perm(gens.back().point_map);
  uint64_t m = l3.hyps.word_masks()[42];
  for (auto _ : state) {
    m = wp.apply(m);
    benchmark::DoNotOptimize(m);
  }
}
BENCHMARK(BM_WordPermApply);

static void BM_DualKeyArithmetic(benchmark::State& state) {
  DualKey a = 0x12345601u, b = 0x00654321u;
  for (auto _ : state) {
    a = dual_normalize(dual_add(a, dual_scale(b, 2)));
    benchmark::DoNotOptimize(a);
    a |= 1;  // keep nonzero
  }
}
BENCHMARK(BM_DualKeyArithmetic);

BENCHMARK_MAIN();

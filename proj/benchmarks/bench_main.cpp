#include <benchmark/benchmark.h>

#include "weilforge/groebner.hpp"
#include "weilforge/instances.hpp"
#include "weilforge/linalg.hpp"
#include "weilforge/macaulay.hpp"
#include "weilforge/weil.hpp"

namespace wf = weilforge;

namespace {

wf::InstanceSpec quadratic_spec(std::uint32_t q, unsigned n, unsigned m, unsigned r, bool homogeneous) {
  wf::InstanceSpec s;
  s.seed = 7;
  s.q = q;
  s.n = n;
  s.m = m;
  s.r = r;
  s.min_degree = 2;
  s.max_degree = 2;
  s.homogeneous = homogeneous;
  return s;
}

wf::PolySystem restricted(const wf::InstanceSpec& spec) {
  const wf::PolySystem F = wf::random_system_gen(spec);
  return wf::weil_restrict_system(wf::make_weil_context(F.front().ring()), F);
}

// Macaulay matrix of a restricted GF(4) system in 2m variables over GF(2).
void BM_Gf2MacaulayRref(benchmark::State& state) {
  const auto m = static_cast<unsigned>(state.range(0));
  const auto d = static_cast<unsigned>(state.range(1));
  const wf::MacaulayMatrix M = wf::build_macaulay(restricted(quadratic_spec(2, 2, m, 8, true)), d);
  std::size_t rank = 0;
  for (auto _ : state) {
    rank = wf::rref(M).rank();
    benchmark::DoNotOptimize(rank);
  }
  state.counters["rows"] = static_cast<double>(M.nrows());
  state.counters["cols"] = static_cast<double>(M.ncols());
  state.counters["rank"] = static_cast<double>(rank);
}
BENCHMARK(BM_Gf2MacaulayRref)->Args({4, 5})->Args({5, 4})->Args({5, 5})->Unit(benchmark::kMillisecond);

// Same matrices with the dense kernel disabled.
void BM_Gf2MacaulayRrefSparse(benchmark::State& state) {
  const auto m = static_cast<unsigned>(state.range(0));
  const auto d = static_cast<unsigned>(state.range(1));
  const wf::MacaulayMatrix M = wf::build_macaulay(restricted(quadratic_spec(2, 2, m, 8, true)), d);
  wf::RrefOptions opts;
  opts.dense_threshold = 2.0;
  for (auto _ : state) benchmark::DoNotOptimize(wf::rref(M, opts).rank());
  state.counters["rows"] = static_cast<double>(M.nrows());
  state.counters["cols"] = static_cast<double>(M.ncols());
}
BENCHMARK(BM_Gf2MacaulayRrefSparse)->Args({4, 5})->Args({5, 4})->Unit(benchmark::kMillisecond);

void BM_Gf3MacaulayRref(benchmark::State& state) {
  const auto d = static_cast<unsigned>(state.range(0));
  const wf::MacaulayMatrix M = wf::build_macaulay(restricted(quadratic_spec(3, 2, 3, 6, true)), d);
  for (auto _ : state) benchmark::DoNotOptimize(wf::rref(M).rank());
  state.counters["rows"] = static_cast<double>(M.nrows());
  state.counters["cols"] = static_cast<double>(M.ncols());
}
BENCHMARK(BM_Gf3MacaulayRref)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_GroebnerRestricted(benchmark::State& state) {
  const auto q = static_cast<std::uint32_t>(state.range(0));
  const auto m = static_cast<unsigned>(state.range(1));
  const wf::PolySystem W = restricted(quadratic_spec(q, 2, m, m, true));
  for (auto _ : state) benchmark::DoNotOptimize(wf::buchberger_reduced_gb(W).elements.size());
}
BENCHMARK(BM_GroebnerRestricted)->Args({2, 2})->Args({2, 3})->Args({3, 2})->Unit(benchmark::kMillisecond);

void BM_WeilRestrict(benchmark::State& state) {
  const auto n = static_cast<unsigned>(state.range(0));
  wf::InstanceSpec spec = quadratic_spec(2, n, 3, 3, false);
  spec.max_degree = 3;
  const wf::PolySystem F = wf::random_system_gen(spec);
  const wf::WeilContext ctx = wf::make_weil_context(F.front().ring());
  for (auto _ : state) benchmark::DoNotOptimize(wf::weil_restrict_system(ctx, F).size());
}
BENCHMARK(BM_WeilRestrict)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMicrosecond);

void BM_SolvingDegree(benchmark::State& state) {
  const wf::PolySystem W = restricted(quadratic_spec(2, 2, static_cast<unsigned>(state.range(0)), 4, true));
  wf::SolvingDegreeOptions opts;
  opts.homogeneous_blocks = true;
  opts.elimination.reduce = false;
  unsigned degree = 0;
  for (auto _ : state) {
    degree = wf::solving_degree(W, opts).degree;
    benchmark::DoNotOptimize(degree);
  }
  state.counters["solvdeg"] = degree;
}
BENCHMARK(BM_SolvingDegree)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

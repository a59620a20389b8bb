// OpenMP kernels against their serial references on q = 8 sized inputs.

#include <benchmark/benchmark.h>

#include <random>

#include "arcforge/kernels.hpp"
#include "arcforge/parallel.hpp"
#include "arcforge/projgeom.hpp"

using namespace arcforge;

namespace {

const FieldTower& tower() {
  static const FieldTower t = FieldTower::build(3);
  return t;
}

const Pg3Geometry& geometry() {
  static const Pg3Geometry g(tower());
  return g;
}

std::vector<Elem> random_elems(std::size_t n, std::uint32_t seed) {
  std::mt19937 rng(seed);
  std::vector<Elem> v(n);
  for (Elem& e : v) e = rng() % 64;
  return v;
}

std::vector<std::uint8_t> membership() {
  std::vector<std::uint8_t> m(geometry().num_points());
  for (std::size_t i = 0; i < m.size(); i += 9) m[i] = 1;
  return m;
}

std::vector<Term> terms() {
  std::mt19937 rng(5);
  std::vector<Term> t;
  for (int k = 0; k < 40; ++k) t.push_back({static_cast<int>(rng() % 17), static_cast<int>(rng() % 17), static_cast<Elem>(1 + rng() % 63)});
  return t;
}

template <bool Parallel>
void BM_count_members(benchmark::State& s) {
  ScopedWorkers w(static_cast<int>(s.range(0)));
  const auto m = membership();
  for (auto _ : s) {
    auto r = Parallel ? kernels::count_members(geometry().flat_lines(), geometry().line_size(), m)
                      : kernels::reference::count_members(geometry().flat_lines(), geometry().line_size(), m);
    benchmark::DoNotOptimize(r);
  }
}

template <bool Parallel>
void BM_incidence_counts(benchmark::State& s) {
  ScopedWorkers w(static_cast<int>(s.range(0)));
  const auto lines = random_elems(3 * 4161, 1), pts = random_elems(3 * 456, 2);
  for (auto _ : s) {
    auto r = Parallel ? kernels::incidence_counts(tower().ext(), lines, pts)
                      : kernels::reference::incidence_counts(tower().ext(), lines, pts);
    benchmark::DoNotOptimize(r);
  }
}

template <bool Parallel>
void BM_reduce_rows(benchmark::State& s) {
  ScopedWorkers w(static_cast<int>(s.range(0)));
  const auto base = random_elems(456 * 276, 3);
  for (auto _ : s) {
    auto data = base;
    auto r = Parallel ? kernels::reduce_rows(tower().ext(), data, 456, 276)
                      : kernels::reference::reduce_rows(tower().ext(), data, 456, 276);
    benchmark::DoNotOptimize(r);
  }
}

template <bool Parallel>
void BM_grid_zeros(benchmark::State& s) {
  ScopedWorkers w(static_cast<int>(s.range(0)));
  const auto t = terms();
  for (auto _ : s) {
    auto r = Parallel ? kernels::grid_zeros(tower().ext(), t) : kernels::reference::grid_zeros(tower().ext(), t);
    benchmark::DoNotOptimize(r);
  }
}

}  // namespace

BENCHMARK(BM_count_members<false>)->Arg(1);
BENCHMARK(BM_count_members<true>)->Arg(1)->Arg(2)->Arg(4);
BENCHMARK(BM_incidence_counts<false>)->Arg(1);
BENCHMARK(BM_incidence_counts<true>)->Arg(1)->Arg(2)->Arg(4);
BENCHMARK(BM_reduce_rows<false>)->Arg(1);
BENCHMARK(BM_reduce_rows<true>)->Arg(1)->Arg(2)->Arg(4);
BENCHMARK(BM_grid_zeros<false>)->Arg(1);
BENCHMARK(BM_grid_zeros<true>)->Arg(1)->Arg(2)->Arg(4);

BENCHMARK_MAIN();

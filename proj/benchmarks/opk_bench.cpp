#include <benchmark/benchmark.h>

#include <random>

#include "opk/bar/bar_complex.hpp"
#include "opk/linalg/chain_complex.hpp"
#include "opk/linalg/smith.hpp"
#include "opk/operad/quotient.hpp"
#include "opk/simplicial/partition_complex.hpp"
#include "opk/simplicial/simplicial_bar.hpp"

namespace {

using namespace opk;
using linalg::CoefficientRing;

bar::OperadPtr preset(const std::string& name, int max) {
  return std::make_shared<const operad::Operad>(operad::quadratic_quotient(operad::load_preset(name), max));
}

void BM_SmithNormalForm(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937 rng(7);
  std::uniform_int_distribution<long> dist(-5, 5);
  std::vector<std::vector<long>> rows(static_cast<std::size_t>(n), std::vector<long>(static_cast<std::size_t>(n)));
  for (auto& r : rows)
    for (auto& x : r) x = dist(rng);
  const auto a = linalg::ExactMatrix::from_rows(CoefficientRing::integers(), rows);
  for (auto _ : state) benchmark::DoNotOptimize(linalg::smith_normal_form(a));
}
BENCHMARK(BM_SmithNormalForm)->Arg(10)->Arg(20)->Arg(40);

void BM_QuadraticQuotient(benchmark::State& state) {
  const int max = static_cast<int>(state.range(0));
  const auto lie = operad::load_preset("lie");
  for (auto _ : state) benchmark::DoNotOptimize(operad::quadratic_quotient(lie, max));
}
BENCHMARK(BM_QuadraticQuotient)->Arg(4)->Arg(5)->Arg(6);

void BM_BarComplexHomology(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto p = preset("com", n);
  for (auto _ : state) {
    const bar::BarComplex b(p, n);
    benchmark::DoNotOptimize(linalg::homology(b.complex()));
  }
}
BENCHMARK(BM_BarComplexHomology)->Arg(4)->Arg(5)->Arg(6);

void BM_AssocBarConstruction(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto p = preset("assoc", n);
  for (auto _ : state) benchmark::DoNotOptimize(bar::BarComplex(p, n).dim(1));
}
BENCHMARK(BM_AssocBarConstruction)->Arg(4)->Arg(5);

void BM_PartitionHomology(benchmark::State& state) {
  const int r = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(linalg::homology(simplicial::PartitionComplex(r, CoefficientRing::integers()).complex()));
}
BENCHMARK(BM_PartitionHomology)->Arg(4)->Arg(5)->Arg(6);

void BM_SimplicialBar(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto p = preset("com", n);
  for (auto _ : state) benchmark::DoNotOptimize(simplicial::SimplicialBarComplex(p, n).dim(1));
}
BENCHMARK(BM_SimplicialBar)->Arg(4)->Arg(5);

}  // namespace

BENCHMARK_MAIN();

// Parallel kernels against their serial references.
#include <benchmark/benchmark.h>

#include <random>

#include "brmult/exactla.hpp"
#include "brmult/polyparse.hpp"
#include "brmult/quotient.hpp"
#include "brmult/symprod.hpp"

namespace {

using brm::PrimeField;
using K = PrimeField;

const std::vector<std::string> kVars{"x", "y"};

brm::DenseMatrix<K> random_matrix(std::size_t n) {
  K k;
  std::mt19937_64 rng(n);
  std::uniform_int_distribution<int> dist(-3, 3);
  brm::DenseMatrix<K> a(k, n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a(i, j) = k.from_int(dist(rng));
  }
  // Half the rows dependent so elimination does real work on zero rows too.
  for (std::size_t i = n / 2; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a(i, j) = k.add(a(i - n / 2, j), a((i - n / 2 + 1) % (n / 2), j));
  }
  return a;
}

void BM_Rref(benchmark::State& state) {
  const auto a = random_matrix(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(brm::rref(a));
}

void BM_RrefSerial(benchmark::State& state) {
  const auto a = random_matrix(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(brm::rref_serial(a));
}

brm::PolyVec<K> vec(std::initializer_list<const char*> entries) {
  K k;
  brm::PolyVec<K> v;
  for (const char* e : entries) v.push_back(brm::parse_poly(e, kVars, k));
  return v;
}

std::vector<brm::PolyVec<K>> module_gens() {
  return {vec({"y", "x"}), vec({"x", "y"}), vec({"y^2 - x^2", "0"}), vec({"x*y", "x^2 + y^3"})};
}

void BM_ClosureOracle(benchmark::State& state) {
  K k;
  auto layout = std::make_shared<const brm::TruncationLayout>(2, 2, static_cast<int>(state.range(0)));
  const auto gens = module_gens();
  for (auto _ : state) {
    auto oracle = brm::make_closure_oracle(k, layout, gens);
    benchmark::DoNotOptimize(oracle->quotient_length(layout->truncation()));
  }
}

void BM_ReferenceOracle(benchmark::State& state) {
  K k;
  auto layout = std::make_shared<const brm::TruncationLayout>(2, 2, static_cast<int>(state.range(0)));
  const auto gens = module_gens();
  for (auto _ : state) {
    auto oracle = brm::make_reference_oracle(k, layout, gens);
    benchmark::DoNotOptimize(oracle->quotient_length(layout->truncation()));
  }
}

std::vector<brm::Submodule<K>> br_modules() {
  K k;
  brm::Submodule<K> m1(k, 2, 2, module_gens());
  brm::Submodule<K> m2(k, 2, 1, {vec({"x"}), vec({"y^2 - x^2"})});
  return {m1, m2};
}

void BM_BRTable(benchmark::State& state) {
  const auto ms = br_modules();
  const int top = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(brm::br_table(ms, {0, 0}, {top, top}));
}

void BM_BRTableSerial(benchmark::State& state) {
  const auto ms = br_modules();
  const int top = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(brm::br_table_serial(ms, {0, 0}, {top, top}));
}

}  // namespace

BENCHMARK(BM_Rref)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RrefSerial)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ClosureOracle)->Arg(8)->Arg(14)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ReferenceOracle)->Arg(8)->Arg(14)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BRTable)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BRTableSerial)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

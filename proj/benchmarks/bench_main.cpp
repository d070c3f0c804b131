#include <benchmark/benchmark.h>

#include "commlen/certify.hpp"
#include "commlen/random.hpp"

using namespace commlen;

namespace {

void BM_QuatMultiply(benchmark::State& state) {
  Rng rng(1);
  const Quat p = rng.nonzero_quat(), q = rng.nonzero_quat();
  for (auto _ : state) benchmark::DoNotOptimize(p * q);
}
BENCHMARK(BM_QuatMultiply);

void BM_QuatCertVerify(benchmark::State& state) {
  Rng rng(2);
  const Quat one = Quat::one(rng.algebra());
  QuatCert cert{{}, one};
  for (int i = 0; i < state.range(0); ++i) {
    cert.pairs.emplace_back(rng.nonzero_quat(), rng.nonzero_quat());
  }
  cert.target = commutator_product(cert.pairs, one);
  for (auto _ : state) benchmark::DoNotOptimize(cert_verify(cert));
}
BENCHMARK(BM_QuatCertVerify)->Arg(4)->Arg(64);

void BM_MatrixMultiply(benchmark::State& state) {
  Rng rng(3);
  const auto n = static_cast<std::size_t>(state.range(0));
  const MatD a = rng.invertible(n), b = rng.invertible(n);
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_MatrixMultiply)->DenseRange(2, 4);

void BM_DecomposeHUVU(benchmark::State& state) {
  Rng rng(4);
  const auto n = static_cast<std::size_t>(state.range(0));
  const MatD g = rng.invertible(n);
  for (auto _ : state) benchmark::DoNotOptimize(decompose_HUVU(g));
}
BENCHMARK(BM_DecomposeHUVU)->DenseRange(2, 4);

void BM_CommutatorNormalForm(benchmark::State& state) {
  Rng rng(5);
  const auto n = static_cast<std::size_t>(state.range(0));
  const std::vector<std::pair<MatD, MatD>> pairs{{rng.invertible(n), rng.invertible(n)}};
  for (auto _ : state) benchmark::DoNotOptimize(commutator_normal_form(pairs));
}
BENCHMARK(BM_CommutatorNormalForm)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

void BM_FactorGL(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto gi = make_instance(6, n, state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(factor_commutators_gl(gi.inst));
}
BENCHMARK(BM_FactorGL)->Args({3, 3})->Args({4, 8})->Unit(benchmark::kMillisecond);

void BM_FactorE(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto gi = make_instance(7, n, state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(factor_commutators_e(gi.inst));
}
BENCHMARK(BM_FactorE)->Args({3, 3})->Args({4, 8})->Unit(benchmark::kMillisecond);

void BM_LowerExtract(benchmark::State& state) {
  Rng rng(8);
  const auto n = static_cast<std::size_t>(state.range(0));
  const Quat a = rng.nonzero_quat(), b = rng.nonzero_quat();
  std::vector<Quat> da(n, Quat::one(rng.algebra())), db = da;
  da.back() = a;
  db.back() = b;
  const std::vector<std::pair<MatD, MatD>> pairs{{MatD::diagonal(da), MatD::diagonal(db)}};
  const Quat tau = commutator(a, b);
  for (auto _ : state) benchmark::DoNotOptimize(lower_extract(pairs, tau));
}
BENCHMARK(BM_LowerExtract)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

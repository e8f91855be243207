#include <benchmark/benchmark.h>

#include "qstoch/differential.hpp"
#include "qstoch/hadamard.hpp"
#include "qstoch/mub.hpp"
#include "qstoch/random.hpp"
#include "qstoch/stochastic.hpp"

namespace {

using namespace qstoch;

void BM_HamiltonProduct(benchmark::State& state) {
  Rng rng = make_rng(1);
  Quaternion p = random_unit_quaternion(rng), q = random_unit_quaternion(rng);
  for (auto _ : state) {
    p = p * q;
    benchmark::DoNotOptimize(p);
  }
}
BENCHMARK(BM_HamiltonProduct);

void BM_MatMul(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const QMatrix a = random_symplectic(n, 1), b = random_symplectic(n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_MatMul)->Arg(3)->Arg(8)->Arg(32);

void BM_Jacobian(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const QMatrix w = random_symplectic(n, 3);
  for (auto _ : state) benchmark::DoNotOptimize(jacobian(MapKind::H, w));
}
BENCHMARK(BM_Jacobian)->Arg(3)->Arg(4)->Arg(6);

void BM_Rank(benchmark::State& state) {
  const JacobianMatrix j = jacobian(MapKind::H, random_symplectic(static_cast<int>(state.range(0)), 4));
  for (auto _ : state) benchmark::DoNotOptimize(rank_report(j.entries));
}
BENCHMARK(BM_Rank)->Arg(4)->Arg(6);

void BM_SigmaCheck(benchmark::State& state) {
  const BistochasticMatrix b = phi(random_symplectic(static_cast<int>(state.range(0)), 5));
  for (auto _ : state) benchmark::DoNotOptimize(sigma_check(b));
}
BENCHMARK(BM_SigmaCheck)->Arg(4)->Arg(8)->Arg(12);

void BM_Bruteforce5(benchmark::State& state) {
  Rng rng = make_rng(6);
  const BistochasticMatrix b = phi(random_haar(Field::Real, 5, rng));
  for (auto _ : state) benchmark::DoNotOptimize(orthostochastic_bruteforce(b));
}
BENCHMARK(BM_Bruteforce5);

void BM_Generic3(benchmark::State& state) {
  const Quaternion a = Quaternion{0.3, 0.5, -0.4, 0.2}.normalized();
  for (auto _ : state) benchmark::DoNotOptimize(generic3(a, Branch::Plus));
}
BENCHMARK(BM_Generic3);

void BM_MubDefectH2(benchmark::State& state) {
  const MubSet s = complete_mub_h2();
  for (auto _ : state) benchmark::DoNotOptimize(mub_defect(s.bases));
}
BENCHMARK(BM_MubDefectH2);

}  // namespace

BENCHMARK_MAIN();

#include <benchmark/benchmark.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "attlab/chafee.hpp"
#include "attlab/models_scalar.hpp"
#include "attlab/setcalc.hpp"
#include "attlab/tridiag.hpp"

using namespace attlab;

namespace {

CompactSetSample scalar_cloud(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 g(seed);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  std::vector<StatePoint> pts;
  pts.reserve(n);
  for (std::size_t i = 0; i < n; ++i) pts.push_back(StatePoint::scalar(u(g)));
  return CompactSetSample(std::move(pts));
}

CompactSetSample field_cloud(std::size_t n, std::uint64_t seed) {
  const auto grid = Grid1D::chafee();
  std::mt19937_64 g(seed);
  std::normal_distribution<double> z;
  std::vector<StatePoint> pts;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> v(grid.size());
    for (auto& x : v) x = z(g);
    pts.push_back(grid.field(std::move(v)));
  }
  return CompactSetSample(std::move(pts));
}

void BM_HausdorffScalar(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = scalar_cloud(n, 1);
  const auto b = scalar_cloud(n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(hausdorff(a, b));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_HausdorffScalar)->RangeMultiplier(4)->Range(64, 16384)->Complexity();

void BM_HausdorffScalarExhaustive(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = scalar_cloud(n, 1);
  const auto b = scalar_cloud(n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(semidist_exhaustive(a, b));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_HausdorffScalarExhaustive)->RangeMultiplier(4)->Range(64, 4096)->Complexity();

void BM_HausdorffField(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = field_cloud(n, 1);
  const auto b = field_cloud(n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(hausdorff(a, b));
}
BENCHMARK(BM_HausdorffField)->Arg(16)->Arg(64)->Arg(256);

void BM_EpsMerge(benchmark::State& state) {
  const auto a = scalar_cloud(static_cast<std::size_t>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(eps_merge(a.points(), 1e-3));
}
BENCHMARK(BM_EpsMerge)->RangeMultiplier(4)->Range(256, 65536);

void BM_Tridiagonal(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<double> sub(n, -1.0), diag(n, 2.5), sup(n, -1.0), rhs(n);
  for (auto _ : state) {
    std::fill(rhs.begin(), rhs.end(), 1.0);
    solve_tridiagonal(sub, diag, sup, rhs);
    benchmark::DoNotOptimize(rhs.data());
  }
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations()) * static_cast<std::int64_t>(n * sizeof(double)));
}
BENCHMARK(BM_Tridiagonal)->Arg(127)->Arg(1023)->Arg(8191);

void BM_ToeplitzSolve(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const ToeplitzTridiag lhs(n, 2.5, -1.0);
  std::vector<double> rhs(n);
  for (auto _ : state) {
    std::fill(rhs.begin(), rhs.end(), 1.0);
    lhs.solve(rhs);
    benchmark::DoNotOptimize(rhs.data());
  }
}
BENCHMARK(BM_ToeplitzSolve)->Arg(127)->Arg(1023)->Arg(8191);

void BM_ChafeeStep(benchmark::State& state) {
  ChafeeModel m;
  ChafeeStepper stepper(m);
  auto u = m.grid.sample([](double x) { return std::sin(x); });
  double t = 0.0;
  for (auto _ : state) {
    stepper.step(t, u, m.dt);
    t += m.dt;
    benchmark::DoNotOptimize(u.data());
  }
}
BENCHMARK(BM_ChafeeStep);

void BM_InclusionAttractor(benchmark::State& state) {
  InclusionModel m;
  m.b = TimeFn::sinusoidal(2.0, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(inclusion_attractor(m, 1.0, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_InclusionAttractor)->Arg(2001)->Arg(10001);

}  // namespace

BENCHMARK_MAIN();

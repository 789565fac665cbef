#include "dbn/kernels.hpp"
#include "dbn/precision.hpp"
#include "dbn/quadrature.hpp"

#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

using dbn::Complex;
using dbn::Real;
using dbn::kernels::Exec;

namespace {

Exec mode(const benchmark::State& st) { return st.range(0) ? Exec::Parallel : Exec::Serial; }

void BM_NodeSums(benchmark::State& st) {
  dbn::PrecisionGuard guard(50);
  const auto rule = dbn::cc_rule(static_cast<unsigned>(st.range(1)), 50);
  std::vector<Real> t, g;
  for (const auto& x : rule->nodes) {
    t.push_back((x + 1) * 2);
    g.push_back(exp(-t.back() * t.back()));
  }
  const Complex z(3.5, 0.7);
  for (auto _ : st) {
    auto r = dbn::kernels::cosine_node_sums(t, g, rule->weights, rule->coarse_weights, z, mode(st));
    benchmark::DoNotOptimize(r);
  }
}

void BM_Ising(benchmark::State& st) {
  const int n = static_cast<int>(st.range(1));
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> J(static_cast<std::size_t>(n) * n, 0.0);
  double shift = 0;
  for (int i = 0; i < n; ++i) {
    for (int k = i + 1; k < n; ++k) {
      J[i * n + k] = J[k * n + i] = u(rng);
      shift += 2 * J[i * n + k];
    }
  }
  for (auto _ : st) {
    auto w = dbn::kernels::ising_magnetization_weights(n, J, 0.5, 0.5 * shift, mode(st));
    benchmark::DoNotOptimize(w);
  }
}

void BM_PairVelocities(benchmark::State& st) {
  std::vector<double> x;
  for (int k = 0; k < st.range(1); ++k) x.push_back(k + 0.1 * std::sin(k));
  for (auto _ : st) {
    auto v = dbn::kernels::pair_velocities(x, mode(st));
    benchmark::DoNotOptimize(v);
  }
}

void BM_LehmerG(benchmark::State& st) {
  std::vector<double> x;
  for (int k = 1; k <= st.range(1); ++k) x.push_back(14.0 + 2.0 * k + 0.3 * std::sin(k));
  std::vector<int> ks;
  for (int k = 1; k + 1 < static_cast<int>(x.size()); ++k) ks.push_back(k);
  for (auto _ : st) {
    auto g = dbn::kernels::lehmer_g(x, ks, 500.0, mode(st));
    benchmark::DoNotOptimize(g);
  }
}

}  // namespace

// First argument: 0 serial reference, 1 OpenMP.
BENCHMARK(BM_NodeSums)->ArgsProduct({{0, 1}, {64, 512}})->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_Ising)->ArgsProduct({{0, 1}, {12, 18}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PairVelocities)->ArgsProduct({{0, 1}, {256, 4096}})->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_LehmerG)->ArgsProduct({{0, 1}, {1000, 10000}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

#include "doctest.h"

#include "dbn/kernels.hpp"
#include "dbn/quadrature.hpp"

#include <omp.h>

#include <cmath>
#include <random>

using namespace dbn;
using kernels::Exec;

namespace {

struct Threads {
  explicit Threads(int n) : saved(omp_get_max_threads()) { omp_set_num_threads(n); }
  ~Threads() { omp_set_num_threads(saved); }
  int saved;
};

std::vector<double> jittered(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-0.3, 0.3);
  std::vector<double> x;
  for (int k = 0; k < n; ++k) x.push_back(k + u(rng));
  return x;
}

}  // namespace

TEST_SUITE("kernels") {

TEST_CASE("node sums: parallel agrees with serial and ignores the thread count") {
  PrecisionGuard g(50);
  const auto rule = cc_rule(256, 50);
  std::vector<Real> t, f;
  for (const auto& x : rule->nodes) {
    t.push_back(x + 1);
    f.push_back(exp(-t.back() * t.back()));
  }
  const Complex z(2.5, 0.6);
  const auto s = kernels::cosine_node_sums(t, f, rule->weights, rule->coarse_weights, z, Exec::Serial);
  kernels::NodeSums p1, p4;
  {
    Threads th(1);
    p1 = kernels::cosine_node_sums(t, f, rule->weights, rule->coarse_weights, z, Exec::Parallel);
  }
  {
    Threads th(4);
    p4 = kernels::cosine_node_sums(t, f, rule->weights, rule->coarse_weights, z, Exec::Parallel);
  }
  CHECK(abs(s.f_hi - p4.f_hi) < Real(1e-45));
  CHECK(abs(s.d_hi - p4.d_hi) < Real(1e-45));
  CHECK(p1.f_hi.re == p4.f_hi.re);
  CHECK(p1.f_hi.im == p4.f_hi.im);
  CHECK(p1.d_lo.re == p4.d_lo.re);
}

TEST_CASE("Ising weights: parallel equals serial") {
  const int n = 12;
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<double> J(n * n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int k = i + 1; k < n; ++k) J[i * n + k] = J[k * n + i] = u(rng);
  }
  const auto s = kernels::ising_magnetization_weights(n, J, 0.3, 10.0, Exec::Serial);
  std::vector<double> p1, p4;
  {
    Threads th(1);
    p1 = kernels::ising_magnetization_weights(n, J, 0.3, 10.0, Exec::Parallel);
  }
  {
    Threads th(4);
    p4 = kernels::ising_magnetization_weights(n, J, 0.3, 10.0, Exec::Parallel);
  }
  REQUIRE(s.size() == static_cast<std::size_t>(2 * n + 1));
  CHECK(p1 == p4);
  for (std::size_t i = 0; i < s.size(); ++i) CHECK(std::abs(s[i] - p4[i]) <= 1e-13 * std::abs(s[i]));
  // Magnetization of odd parity is empty for even n.
  CHECK(s[n + 1] == 0.0);
}

TEST_CASE("pair velocities: parallel equals serial") {
  const auto x = jittered(500, 2);
  const auto s = kernels::pair_velocities(x, Exec::Serial);
  Threads th(4);
  const auto p = kernels::pair_velocities(x, Exec::Parallel);
  for (std::size_t i = 0; i < x.size(); ++i) CHECK(std::abs(s[i] - p[i]) <= 1e-12 * (1 + std::abs(s[i])));
  double sum = 0;
  for (double v : s) sum += v;
  CHECK(std::abs(sum) < 1e-9);
}

TEST_CASE("Lehmer sums: parallel equals serial") {
  std::vector<double> x;
  for (int k = 1; k <= 2000; ++k) x.push_back(10.0 + 1.5 * k + 0.2 * std::sin(k));
  std::vector<int> ks;
  for (int k = 1; k < 1999; k += 7) ks.push_back(k);
  const auto s = kernels::lehmer_g(x, ks, 300.0, Exec::Serial);
  Threads th(4);
  const auto p = kernels::lehmer_g(x, ks, 300.0, Exec::Parallel);
  CHECK(s == p);
  CHECK_THROWS(kernels::lehmer_g(x, {2000}, 300.0, Exec::Parallel));
}

}  // TEST_SUITE

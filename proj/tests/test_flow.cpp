#include "doctest.h"
#include "oracles.hpp"

#include "dbn/flow.hpp"

#include <cmath>
#include <random>

using namespace dbn;

namespace {

std::vector<double> symmetric_random(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> gap(0.5, 1.5);
  std::vector<double> half;
  double x = 0.3;
  for (int k = 0; k < n / 2; ++k) {
    half.push_back(x);
    x += gap(rng);
  }
  std::vector<double> out;
  for (auto it = half.rbegin(); it != half.rend(); ++it) out.push_back(-*it);
  for (double v : half) out.push_back(v);
  return out;
}

}  // namespace

TEST_SUITE("flow") {

TEST_CASE("two particles follow sqrt(a0^2 + 2t)") {
  FlowOptions opt;
  opt.checkpoints = 20;
  const FlowRun run = integrate_flow(make_state(0.0, {-1.0, 1.0}), 1.0, opt);
  REQUIRE(run.states.size() == 21);
  for (const auto& s : run.states) {
    const double a = oracle::two_particle_position(1.0, s.t);
    CHECK(std::abs(s.positions[0] + a) < 1e-8);
    CHECK(std::abs(s.positions[1] - a) < 1e-8);
  }
}

TEST_CASE("a single particle is stationary") {
  const FlowRun run = integrate_flow(make_state(0.0, {0.7}), 2.0);
  for (const auto& s : run.states) CHECK(s.positions[0] == 0.7);
  CHECK(flow_velocity({0.7})[0] == 0.0);
}

TEST_CASE("symmetric progression keeps its symmetry") {
  std::vector<double> x;
  for (int k = -4; k <= 4; ++k) x.push_back(k);
  CHECK(std::abs(flow_velocity(x)[4]) < 1e-15);
  const FlowRun run = integrate_flow(make_state(0.0, x), 1.0);
  for (const auto& s : run.states) {
    CHECK(symmetry_defect(s.positions) < 1e-9);
    CHECK(std::abs(s.positions[4]) < 1e-9);
  }
}

TEST_CASE("two-particle monitors") {
  const Monitors m = monitors(std::vector<double>{-1.0, 1.0});
  CHECK(m.hamiltonian == doctest::Approx(2 * std::log(0.5)).epsilon(1e-15));
  CHECK(m.energy == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(m.velocity_norm_sq == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("gradient-flow identity along an 8-particle trajectory") {
  const FlowState s0 = make_state(0.0, symmetric_random(8, 11));
  const double t = 0.3, d = 1e-4;
  FlowOptions opt;
  opt.times = {t - d, t, t + d};
  const FlowRun run = integrate_flow(s0, t + d, opt);
  REQUIRE(run.states.size() == 4);
  const double dH = (run.states[3].hamiltonian - run.states[1].hamiltonian) / (2 * d);
  const double v2 = monitors(run.states[2]).velocity_norm_sq;
  CHECK(std::abs(dH + v2) < 1e-6 * v2);
}

TEST_CASE("hamiltonian is non-increasing") {
  FlowOptions opt;
  opt.checkpoints = 40;
  const FlowRun run = integrate_flow(make_state(0.0, symmetric_random(8, 5)), 2.0, opt);
  for (std::size_t i = 1; i < run.states.size(); ++i) {
    CHECK(run.states[i].hamiltonian <= run.states[i - 1].hamiltonian);
  }
}

TEST_CASE("energy comparison is reported, both sides negative") {
  const Monitors m = monitors(symmetric_random(8, 3));
  const double a = -m.velocity_norm_sq, b = -4 * m.energy;
  CHECK(a < 0);
  CHECK(b < 0);
  MESSAGE("-|v|^2 / -4E = " << a / b);
}

TEST_CASE("unordered positions are rejected") {
  CHECK_THROWS_AS(make_state(0.0, {1.0, 0.5}), Error);
  CHECK_THROWS_AS(make_state(0.0, {1.0, 1.0}), Error);
}

TEST_CASE("batch matches individual runs") {
  std::vector<FlowState> init;
  for (std::uint64_t s = 1; s <= 4; ++s) init.push_back(make_state(0.0, symmetric_random(6, s)));
  const auto batch = integrate_flow_batch(init, 0.5);
  for (std::size_t i = 0; i < init.size(); ++i) {
    const FlowRun one = integrate_flow(init[i], 0.5);
    CHECK(batch[i].states.back().positions == one.states.back().positions);
  }
}

TEST_CASE("equilibrium zeros") {
  const auto z = equilibrium_zeros(1.0, 3);
  REQUIRE(z.size() == 6);
  CHECK(z[0] == doctest::Approx(-2.5 * M_PI));
  CHECK(z[3] == doctest::Approx(0.5 * M_PI));
}

TEST_CASE("backward heat equation: equilibrium family is an exact solution") {
  PrecisionContext ctx;
  PrecisionGuard g(ctx);
  const Real r = equilibrium_heat_residual(Real(1), Real(0.4), Complex(0.9, 0.3), ctx);
  CHECK(abs(r) < Real(1e-40));
  const Real r2 = exact_heat_residual(EvenMeasure::symmetric_atoms({{1.0, 1.0}}), 0.7, Complex(1.3, -0.2), ctx);
  CHECK(abs(r2) < Real(1e-40));
}

TEST_CASE("backward heat equation: finite differences for Phi") {
  PrecisionContext ctx;
  PrecisionGuard g(ctx);
  const HeatResidual a = backward_heat_residual(EvenMeasure::riemann_phi(), 0.2, Complex(1.0, 0.0), 1e-3, ctx);
  const HeatResidual b = backward_heat_residual(EvenMeasure::riemann_phi(), 0.2, Complex(1.0, 0.0), 5e-4, ctx);
  CHECK(a.residual < 1e-4 * a.scale);
  const double ratio = a.residual / b.residual;
  CHECK(ratio > 3.5);
  CHECK(ratio < 4.5);
}

TEST_CASE("backward heat equation: cosine residual vanishes at rate h^2") {
  PrecisionContext ctx;
  PrecisionGuard g(ctx);
  const EvenMeasure m = EvenMeasure::symmetric_atoms({{1.0, 1.0}});
  const HeatResidual a = backward_heat_residual(m, 0.3, Complex(1.0, 0.0), 1e-3, ctx);
  const HeatResidual b = backward_heat_residual(m, 0.3, Complex(1.0, 0.0), 5e-4, ctx);
  CHECK(a.residual / b.residual == doctest::Approx(4.0).epsilon(0.02));
}

TEST_CASE("finite-difference step below the precision is refused") {
  const PrecisionContext ctx{20, 1e-15};
  PrecisionGuard g(ctx);
  try {
    backward_heat_residual(EvenMeasure::symmetric_atoms({{1.0, 1.0}}), 0.0, Complex(1.0, 0.0), 1e-12, ctx);
    FAIL("expected PrecisionLoss");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::PrecisionLoss);
  }
}

}  // TEST_SUITE

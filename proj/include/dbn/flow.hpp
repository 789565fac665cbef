#pragma once

#include "dbn/measures.hpp"

#include <vector>

namespace dbn {

struct FlowState {
  double t = 0.0;
  std::vector<double> positions;  // strictly ascending
  double hamiltonian = 0.0;
  double energy = 0.0;
};

struct Monitors {
  double hamiltonian = 0.0;       // sum over ordered pairs j != k of log 1/|x_j - x_k|
  double energy = 0.0;            // sum over ordered pairs of 1/|x_j - x_k|^2
  double velocity_norm_sq = 0.0;  // sum_k xdot_k^2
};

/// Throws InvalidArgument unless positions are finite and strictly ascending.
Monitors monitors(const std::vector<double>& positions);
Monitors monitors(const FlowState& s);

/// xdot_k = 2 sum_{j != k} 1/(x_k - x_j).
std::vector<double> flow_velocity(const std::vector<double>& positions);

/// Sets hamiltonian and energy from positions.
FlowState make_state(double t, std::vector<double> positions);

struct FlowOptions {
  double rtol = 1e-12;
  double atol = 1e-12;
  /// Uniform checkpoints t0 + (t_end - t0) i / n, i = 0..n. Ignored when `times` is set.
  int checkpoints = 10;
  std::vector<double> times;  // explicit ascending checkpoint times in (t0, t_end]
  double collision_fraction = 1e-8;  // collision floor relative to the initial minimum gap
  int max_steps = 10'000'000;
};

struct FlowRun {
  std::vector<FlowState> states;  // initial state, then one per checkpoint
  int accepted = 0;
  int rejected = 0;
  double collision_floor = 0.0;
};

/// Dormand-Prince 5(4) on the repulsive pair dynamics, forward in t.
/// Steps that would push a gap below the collision floor are rejected; when that
/// happens at the minimum step size, CollisionFloor is thrown with the time.
FlowRun integrate_flow(const FlowState& initial, double t_end, const FlowOptions& opt = {});

/// Independent trajectories, run concurrently.
std::vector<FlowRun> integrate_flow_batch(const std::vector<FlowState>& initials, double t_end,
                                          const FlowOptions& opt = {});

/// max_k |x_k + x_{N+1-k}|.
double symmetry_defect(const std::vector<double>& positions);

/// Zeros of cos(z u) closest to the origin: +-pi (k + 1/2) / u for k < per_side, ascending.
std::vector<double> equilibrium_zeros(double u, int per_side);

struct HeatResidual {
  double residual = 0.0;        // |d_lambda H + d_zz H|
  double scale = 0.0;           // |H(lambda, z)|
  double rounding_bound = 0.0;  // evaluation error propagated through the differences
  double d_lambda = 0.0;        // |central difference in lambda|
  double d_zz = 0.0;            // |central second difference in z|
};

/// Finite-difference residual of the backward heat equation d_lambda H = -d_zz H.
/// Throws PrecisionLoss when evaluation error dominates (step too small for the precision).
HeatResidual backward_heat_residual(const EvenMeasure& m, double lambda, const Complex& z, double h,
                                    const PrecisionContext& ctx);

/// Residual from analytic partials for a finite atomic measure.
Real exact_heat_residual(const EvenMeasure& atoms, double lambda, const Complex& z, const PrecisionContext& ctx);

/// Residual from analytic partials of e^{t u^2} cos(z u).
Real equilibrium_heat_residual(const Real& u, const Real& t, const Complex& z, const PrecisionContext& ctx);

}  // namespace dbn

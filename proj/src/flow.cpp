#include "dbn/flow.hpp"

#include "dbn/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace dbn {

namespace {

void check_positions(const std::vector<double>& x) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i])) throw Error(ErrorCode::InvalidArgument, "flow positions must be finite");
    if (i > 0 && !(x[i] > x[i - 1])) throw Error(ErrorCode::InvalidArgument, "flow positions must be strictly ascending");
  }
}

double min_gap(const std::vector<double>& x) {
  double g = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < x.size(); ++i) g = std::min(g, x[i] - x[i - 1]);
  return g;
}

}  // namespace

std::vector<double> flow_velocity(const std::vector<double>& positions) {
  return kernels::pair_velocities(positions, kernels::default_exec());
}

Monitors monitors(const std::vector<double>& x) {
  check_positions(x);
  Monitors m;
  const std::size_t n = x.size();
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = j + 1; k < n; ++k) {
      const double d = x[k] - x[j];
      m.hamiltonian -= 2.0 * std::log(d);
      m.energy += 2.0 / (d * d);
    }
  }
  for (double v : flow_velocity(x)) m.velocity_norm_sq += v * v;
  return m;
}

Monitors monitors(const FlowState& s) { return monitors(s.positions); }

FlowState make_state(double t, std::vector<double> positions) {
  FlowState s;
  s.t = t;
  s.positions = std::move(positions);
  const Monitors m = monitors(s.positions);
  s.hamiltonian = m.hamiltonian;
  s.energy = m.energy;
  return s;
}

double symmetry_defect(const std::vector<double>& x) {
  double d = 0;
  for (std::size_t k = 0; k < x.size(); ++k) d = std::max(d, std::abs(x[k] + x[x.size() - 1 - k]));
  return d;
}

std::vector<double> equilibrium_zeros(double u, int per_side) {
  if (!(u > 0) || per_side < 0) throw Error(ErrorCode::InvalidArgument, "equilibrium_zeros needs u > 0");
  std::vector<double> z;
  for (int k = per_side - 1; k >= 0; --k) z.push_back(-M_PI * (k + 0.5) / u);
  for (int k = 0; k < per_side; ++k) z.push_back(M_PI * (k + 0.5) / u);
  return z;
}

// ---------------------------------------------------------------------------

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

struct Stepper {
  std::size_t n;
  std::vector<double> k1, k2, k3, k4, k5, k6, k7, tmp, y5;
  explicit Stepper(std::size_t n) : n(n), k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), tmp(n), y5(n) {}

  void rhs(const std::vector<double>& y, std::vector<double>& out) { out = flow_velocity(y); }

  // Returns the scaled error norm; y5 holds the candidate. k1 must hold f(y).
  double step(const std::vector<double>& y, double h, double rtol, double atol) {
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * a21 * k1[i];
    rhs(tmp, k2);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
    rhs(tmp, k3);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    rhs(tmp, k4);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    rhs(tmp, k5);
    for (std::size_t i = 0; i < n; ++i) {
      tmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
    }
    rhs(tmp, k6);
    for (std::size_t i = 0; i < n; ++i) {
      y5[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
    }
    rhs(y5, k7);
    double err = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      const double sc = atol + rtol * std::max(std::abs(y[i]), std::abs(y5[i]));
      if (!std::isfinite(e) || !std::isfinite(y5[i])) return std::numeric_limits<double>::infinity();
      err = std::max(err, std::abs(e) / sc);
    }
    return err;
  }
};

}  // namespace

FlowRun integrate_flow(const FlowState& initial, double t_end, const FlowOptions& opt) {
  check_positions(initial.positions);
  const double t0 = initial.t;
  if (!(t_end > t0)) throw Error(ErrorCode::InvalidArgument, "integrate_flow is forward only: t_end must exceed t");
  if (!(opt.rtol > 0) || !(opt.atol > 0)) throw Error(ErrorCode::InvalidArgument, "tolerances must be positive");

  std::vector<double> targets = opt.times;
  if (targets.empty()) {
    if (opt.checkpoints < 1) throw Error(ErrorCode::InvalidArgument, "checkpoints must be >= 1");
    for (int i = 1; i <= opt.checkpoints; ++i) targets.push_back(t0 + (t_end - t0) * i / opt.checkpoints);
    targets.back() = t_end;
  }
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (!(targets[i] > t0) || targets[i] > t_end || (i > 0 && !(targets[i] > targets[i - 1]))) {
      throw Error(ErrorCode::InvalidArgument, "checkpoint times must ascend inside (t0, t_end]");
    }
  }

  FlowRun run;
  run.states.push_back(make_state(t0, initial.positions));
  const std::size_t n = initial.positions.size();
  if (n < 2) {
    for (double tc : targets) run.states.push_back(make_state(tc, initial.positions));
    return run;
  }

  const double gap0 = min_gap(initial.positions);
  run.collision_floor = opt.collision_fraction * gap0;
  Stepper st(n);
  std::vector<double> y = initial.positions;
  double t = t0;
  st.rhs(y, st.k1);
  double vmax = 0;
  for (double v : st.k1) vmax = std::max(vmax, std::abs(v));
  double h = 0.01 * gap0 / std::max(vmax, 1e-300);
  h = std::min(h, t_end - t0);

  std::size_t next = 0;
  int steps = 0;
  while (next < targets.size()) {
    if (++steps > opt.max_steps) throw Error(ErrorCode::InvalidArgument, "integrate_flow: step limit reached");
    const double target = targets[next];
    bool hit = false;
    double hs = h;
    if (t + hs >= target) {
      hs = target - t;
      hit = true;
    }
    const double h_min = 1e-14 * std::max(1.0, std::abs(t));
    const double err = st.step(y, hs, opt.rtol, opt.atol);
    bool ok = err <= 1.0;
    bool collided = false;
    if (ok) {
      for (std::size_t i = 1; i < n; ++i) {
        if (!(st.y5[i] - st.y5[i - 1] >= run.collision_floor)) collided = true;
      }
      ok = !collided;
    }
    if (!ok) {
      ++run.rejected;
      const double shrink = collided || !std::isfinite(err) ? 0.25 : std::max(0.2, 0.9 * std::pow(err, -0.2));
      h = hs * shrink;
      if (h < h_min) {
        std::ostringstream os;
        os.precision(17);
        os << "collision floor " << run.collision_floor << " reached near t=" << t << " (min gap " << min_gap(y) << ")";
        throw Error(ErrorCode::CollisionFloor, os.str());
      }
      continue;
    }
    ++run.accepted;
    t = hit ? target : t + hs;
    y.swap(st.y5);
    st.k1 = st.k7;  // first-same-as-last
    const double grow = err == 0 ? 5.0 : std::min(5.0, std::max(0.2, 0.9 * std::pow(err, -0.2)));
    // A step clipped to a checkpoint does not shrink the controller's step size.
    h = hit ? std::max(h, hs * grow) : hs * grow;
    if (hit) {
      run.states.push_back(make_state(t, y));
      ++next;
    }
  }
  return run;
}

std::vector<FlowRun> integrate_flow_batch(const std::vector<FlowState>& initials, double t_end,
                                          const FlowOptions& opt) {
  std::vector<FlowRun> out(initials.size());
  std::vector<std::string> errors(initials.size());
  std::vector<ErrorCode> codes(initials.size(), ErrorCode::InvalidArgument);
  const bool par = kernels::default_exec() == kernels::Exec::Parallel;
#pragma omp parallel for schedule(dynamic) if (par)
  for (std::size_t i = 0; i < initials.size(); ++i) {
    try {
      out[i] = integrate_flow(initials[i], t_end, opt);
    } catch (const Error& e) {
      errors[i] = e.what();
      codes[i] = e.code();
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  }
  for (std::size_t i = 0; i < errors.size(); ++i) {
    if (!errors[i].empty()) throw Error(codes[i], "trajectory " + std::to_string(i) + ": " + errors[i]);
  }
  return out;
}

// ---------------------------------------------------------------------------

HeatResidual backward_heat_residual(const EvenMeasure& m, double lambda, const Complex& z, double h,
                                    const PrecisionContext& ctx) {
  if (!(h > 0)) throw Error(ErrorCode::InvalidArgument, "heat residual step must be positive");
  if (!entire_at(m, lambda - h) || !entire_at(m, lambda + h)) {
    throw Error(ErrorCode::RangeError, "lambda +- h leaves the entireness range");
  }
  PrecisionGuard guard(ctx);
  const Real hr(h);
  const Complex dz(hr, Real(0));
  const TransformEval lp = eval_H(m, lambda + h, z, ctx);
  const TransformEval lm = eval_H(m, lambda - h, z, ctx);
  HEvaluator ev(m, lambda, ctx);
  const TransformEval c = ev.eval(z);
  const TransformEval zp = ev.eval(z + dz);
  const TransformEval zm = ev.eval(z - dz);

  const Complex d_l = (lp.value - lm.value) / (2 * hr);
  const Complex d_zz = (zp.value - Real(2) * c.value + zm.value) / (hr * hr);
  HeatResidual r;
  r.residual = to_double(abs(d_l + d_zz));
  r.scale = to_double(abs(c.value));
  r.d_lambda = to_double(abs(d_l));
  r.d_zz = to_double(abs(d_zz));
  r.rounding_bound = (lp.abs_error_estimate + lm.abs_error_estimate) / (2 * h) +
                     (zp.abs_error_estimate + 2 * c.abs_error_estimate + zm.abs_error_estimate) / (h * h);
  if (r.rounding_bound > 1e-3 * std::max(r.d_zz, r.scale)) {
    std::ostringstream os;
    os << "step h=" << h << " too small for the precision: evaluation error contributes " << r.rounding_bound;
    throw Error(ErrorCode::PrecisionLoss, os.str());
  }
  return r;
}

Real exact_heat_residual(const EvenMeasure& atoms, double lambda, const Complex& z, const PrecisionContext& ctx) {
  if (atoms.kind != MeasureKind::SymmetricAtoms) {
    throw Error(ErrorCode::InvalidArgument, "exact heat residual needs a finite atomic measure");
  }
  PrecisionGuard guard(ctx);
  Complex d_l, d_zz;
  for (const auto& a : atoms.atoms) {
    const Real t(a.t), w(a.w), lr(lambda);
    const Real g = w * exp(lr * t * t);
    Complex s, c;
    sincos(z * t, s, c);
    d_l += c * (t * t * g);              // d/d lambda of g cos(z t)
    d_zz += (-(c * t) * t) * g;          // d^2/dz^2 of g cos(z t)
  }
  return abs(d_l + d_zz);
}

Real equilibrium_heat_residual(const Real& u, const Real& t, const Complex& z, const PrecisionContext& ctx) {
  PrecisionGuard guard(ctx);
  const Real g = exp(t * u * u);
  Complex s, c;
  sincos(z * u, s, c);
  const Complex d_t = c * (u * u * g);
  const Complex d_zz = (-(c * u) * u) * g;
  return abs(d_t + d_zz);
}

}  // namespace dbn

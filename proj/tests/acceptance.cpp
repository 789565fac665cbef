// One pass/fail line per acceptance criterion. Exit status is the number of failures.

#include "oracles.hpp"

#include "dbn/casebook.hpp"
#include "dbn/estimator.hpp"
#include "dbn/flow.hpp"
#include "dbn/kernels.hpp"
#include "dbn/leeyang.hpp"
#include "dbn/numerics.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

using namespace dbn;

namespace {

constexpr double kCase2Tol = 1e-6;
constexpr double kCase2Seconds = 10;
constexpr double kCase5Tol = 1e-5;
constexpr double kCase6Tol = 1e-8;
constexpr double kCase8Tol = 1e-8;
constexpr double kXiZeroTol = 1e-6;
constexpr double kXiSeconds = 60;
constexpr double kThetaTol = 1e-12;
constexpr double kLehmerTol = 1e-12;
constexpr double kFlowTol = 1e-8;
constexpr double kGradFlowRelTol = 1e-6;
constexpr double kHeatRatioLo = 3.5, kHeatRatioHi = 4.5;
constexpr double kHeatExactTol = 1e-40;
constexpr double kLeeYangTol = 1e-10;
constexpr double kCase3ResidualTol = 1e-20;
constexpr double kCase3WeightTol = 1e-3;
constexpr double kGaussianMomentTol = 1e-10;
constexpr double kConvergenceRatioTol = 0.05;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " FAILED[" << what << "]";
    }
  }
};

using Clock = std::chrono::steady_clock;
double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

const PrecisionContext kCtx{};

void crit_case2_threshold(Outcome& o) {
  const auto t0 = Clock::now();
  const BisectResult b = bisect_lambda(case2_measure(), 0.0, 1.0, {-20, 20, -3, 3}, 1e-7, kCtx);
  const double s = seconds_since(t0);
  const double err = std::abs(b.lambda_star - std::log(2.0));
  o.detail << "lambda*=" << b.lambda_star << " |err|=" << err << " t=" << s << "s";
  o.require(err < kCase2Tol, "accuracy");
  o.require(s < kCase2Seconds, "runtime");
}

void crit_case5_threshold(Outcome& o) {
  for (double b0 : {10.0, 5.0, 20.0}) {
    const BisectResult b = bisect_lambda(case5_measure(b0), 0.0, b0 - 0.1, {-5, 5, -1, 1}, 1e-7, kCtx);
    const double expect = oracle::case5_threshold(b0);
    const double err = std::abs(b.lambda_star - expect);
    o.detail << "b0=" << b0 << ": " << b.lambda_star << " vs " << expect << " ";
    o.require(err < kCase5Tol, "b0=" + std::to_string(b0));
  }
}

void crit_case6_offender(Outcome& o) {
  for (double b : {0.0, 0.5}) {
    const RealityVerdict v = verify_all_real(case6_measure(), b, {-3, 3, -3, 3}, kCtx);
    double err = INFINITY;
    for (const auto& z : v.offenders) err = std::min(err, std::abs(z.z() - std::complex<double>(0, 2 * (1 - b))));
    o.detail << "b=" << b << " |z-2(1-b)i|=" << err << " ";
    o.require(!v.all_real && err < kCase6Tol, "b=" + std::to_string(b));
  }
}

void crit_case8_zeros(Outcome& o) {
  const AnalyticFunction f(
      [](const Complex& w) {
        FunctionValue v;
        dbn::case8_laplace(w, v.value, v.derivative);
        return v;
      },
      false, true);
  const ZeroSet zs = locate_zeros(f, {-0.5, 0.5, -3.3, 3.3}, kCtx);
  const std::vector<std::pair<std::complex<double>, int>> expect{
      {{0, M_PI / 2}, 1}, {{0, -M_PI / 2}, 1}, {{0, M_PI}, 2}, {{0, -M_PI}, 2}};
  double worst = 0;
  int mult = 0;
  for (const auto& [e, m] : expect) {
    double best = INFINITY;
    int found = 0;
    for (const auto& z : zs.zeros) {
      if (std::abs(z.z() - e) < best) {
        best = std::abs(z.z() - e);
        found = z.multiplicity;
      }
    }
    worst = std::max(worst, best);
    o.require(found == m, "multiplicity");
    mult += found;
  }
  o.detail << "count=" << zs.count << " max |z - expected|=" << worst;
  o.require(zs.count == 6 && mult == 6, "count");
  o.require(worst < kCase8Tol, "location");
}

double xi_sign_root(double a, double b) {
  auto f = [](double x) { return to_double(eval_xi_reference(Complex(x, 0.0), kCtx).re); };
  double fa = f(a);
  for (int i = 0; i < 40; ++i) {
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    if ((fm < 0) == (fa < 0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

void crit_xi_oracle(Outcome& o) {
  const auto t0 = Clock::now();
  const std::vector<std::complex<double>> pts{{0, 0}, {1, 0}, {0.3, 0.2}, {5, 0}, {10, 0.5}};
  double worst = 0;
  for (const auto& z : pts) {
    const TransformEval h = eval_H(EvenMeasure::riemann_phi(), 0.0, from_std(z), kCtx);
    const Complex x = eval_xi_reference(from_std(z), kCtx);
    const double diff = to_double(abs(h.value - x));
    const double budget = h.abs_error_estimate + kCtx.target_abs_tol;
    worst = std::max(worst, diff / budget);
    o.require(diff <= budget, "point");
  }
  const auto zs =
      locate_real_zeros(AnalyticFunction::from_measure(EvenMeasure::riemann_phi(), 0.0, kCtx), 10.0, 25.0, kCtx);
  const double r1 = xi_sign_root(14.0, 14.3), r2 = xi_sign_root(20.9, 21.1);
  o.require(zs.size() == 2, "zero count");
  if (zs.size() >= 2) {
    const double e1 = std::abs(zs[0].z().real() - r1), e2 = std::abs(zs[1].z().real() - r2);
    o.detail << "zeros " << zs[0].z().real() << ", " << zs[1].z().real() << " (xi route " << r1 << ", " << r2 << ") ";
    o.require(e1 < kXiZeroTol && e2 < kXiZeroTol, "zeros");
    o.require(std::abs(r1 - oracle::kXiZero1) < kXiZeroTol && std::abs(r2 - oracle::kXiZero2) < kXiZeroTol,
              "xi route");
  }
  const double s = seconds_since(t0);
  o.detail << "max diff/budget=" << worst << " t=" << s << "s";
  o.require(s < kXiSeconds, "runtime");
}

void crit_theta_identity(Outcome& o) {
  PrecisionGuard g(kCtx);
  double worst = 0;
  for (double x : {0.25, 0.5, 1.0, 2.0, 4.0}) {
    worst = std::max(worst, std::abs(to_double(theta_identity_residual(Real(x), kCtx))));
  }
  o.detail << "max residual=" << worst;
  o.require(worst < kThetaTol, "residual");
}

void crit_lehmer_formula(Outcome& o) {
  double worst = 0;
  int compared = 0;
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> jitter(-2.0, 2.0);
  for (int table = 0; table < 3; ++table) {
    std::vector<double> x;
    for (int j = 1; j <= 80; ++j) x.push_back(j * 10.0 + (table ? jitter(rng) : 0.0));
    const ZeroTable t{x, "synthetic"};
    const std::vector<int> ks{1, 5, 20, 40, 79};
    const auto g = kernels::lehmer_g(x, ks, 200.0, kernels::Exec::Parallel);
    for (std::size_t i = 0; i < ks.size(); ++i) {
      const double ref = oracle::lehmer_g_bruteforce(x, ks[i], 200.0);
      worst = std::max(worst, std::abs(g[i] - ref) / ref);
      ++compared;
    }
  }
  o.require(compared == 15 && worst < kLehmerTol, "g_k oracle");
  const ZeroTable zeta = load_zero_table(DBN_TEST_DATA "/zeta_zeros_100.txt");
  int defined = 0, positive = 0;
  double top = -INFINITY;
  for (const auto& e : lehmer_batch(zeta, 1, 99)) {
    if (!e.record) continue;
    ++defined;
    top = std::max(top, e.record->lambda_k);
    const double ref = oracle::lehmer_g_bruteforce(zeta.ordinates, e.k, kDefaultTruncationRadius);
    worst = std::max(worst, std::abs(e.record->g_k - ref) / ref);
    if (e.record->lambda_k > 0) ++positive;
  }
  o.detail << "max rel g_k err=" << worst << "; " << defined << " defined records, max lambda_k=" << top;
  o.require(defined > 0 && positive == 0, "lambda_k <= 0");
}

void crit_flow_checks(Outcome& o) {
  FlowOptions opt;
  opt.checkpoints = 50;
  const FlowRun two = integrate_flow(make_state(0.0, {-1.0, 1.0}), 1.0, opt);
  double worst = 0;
  for (const auto& s : two.states) {
    const double a = oracle::two_particle_position(1.0, s.t);
    worst = std::max({worst, std::abs(s.positions[0] + a), std::abs(s.positions[1] - a)});
  }
  o.require(worst < kFlowTol, "N=2");

  std::vector<double> x0{-5.1, -3.2, -1.9, -0.4, 0.4, 1.9, 3.2, 5.1};
  const FlowState s0 = make_state(0.0, x0);
  const double d = 1e-4;
  double identity = 0;
  bool down = true;
  double prev = INFINITY;
  for (double t : {0.1, 0.5, 1.0}) {
    FlowOptions o2;
    o2.times = {t - d, t, t + d};
    const FlowRun r = integrate_flow(s0, t + d, o2);
    const double dH = (r.states[3].hamiltonian - r.states[1].hamiltonian) / (2 * d);
    const double v2 = monitors(r.states[2]).velocity_norm_sq;
    identity = std::max(identity, std::abs(dH + v2) / v2);
    down = down && r.states[2].hamiltonian <= prev;
    prev = r.states[2].hamiltonian;
  }
  FlowOptions o3;
  o3.checkpoints = 100;
  const FlowRun eight = integrate_flow(s0, 1.0, o3);
  for (std::size_t i = 1; i < eight.states.size(); ++i) {
    down = down && eight.states[i].hamiltonian <= eight.states[i - 1].hamiltonian;
  }
  o.detail << "N=2 max err=" << worst << "; N=8 |dH/dt + |v|^2|/|v|^2 max=" << identity;
  o.require(identity < kGradFlowRelTol, "gradient identity");
  o.require(down, "H non-increasing");
}

void crit_heat_residual(Outcome& o) {
  const HeatResidual a = backward_heat_residual(EvenMeasure::riemann_phi(), 0.2, Complex(1.0, 0.0), 1e-3, kCtx);
  const HeatResidual b = backward_heat_residual(EvenMeasure::riemann_phi(), 0.2, Complex(1.0, 0.0), 5e-4, kCtx);
  const double ratio = a.residual / b.residual;
  PrecisionGuard g(kCtx);
  const double exact = std::abs(to_double(
      exact_heat_residual(EvenMeasure::symmetric_atoms({{1.0, 1.0}}), 0.6, Complex(1.2, 0.3), kCtx)));
  const double eq = std::abs(to_double(equilibrium_heat_residual(Real(1), Real(0.6), Complex(1.2, 0.3), kCtx)));
  o.detail << "Phi residual ratio h/(h/2)=" << ratio << " (" << a.residual << " -> " << b.residual
           << "); e^l cos z exact residual=" << exact << ", " << eq;
  o.require(ratio > kHeatRatioLo && ratio < kHeatRatioHi, "ratio");
  o.require(exact < kHeatExactTol && eq < kHeatExactTol, "exact");
}

void crit_lee_yang(Outcome& o) {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> size(1, 8);
  std::uniform_real_distribution<double> beta(0.0, 2.0);
  double worst = 0;
  int bad = 0;
  for (int i = 0; i < 50; ++i) {
    const SpinSystem s = random_ferromagnet(size(rng), beta(rng), 1.0, rng());
    const LeeYangVerdict v = verify_leeyang(s, kCtx);
    worst = std::max(worst, v.max_deviation);
    if (!(v.max_deviation < kLeeYangTol)) ++bad;
  }
  const LeeYangVerdict planted = verify_leeyang(planted_violation(), kCtx);
  o.detail << "50 systems, max ||y|-1|=" << worst << "; planted max deviation=" << planted.max_deviation;
  o.require(bad == 0, "random systems");
  o.require(!planted.lee_yang, "planted");
}

void crit_case3_construction(Outcome& o) {
  const Case3Construction c = construct_case3(6, kCtx);
  double resid = 0;
  for (const auto& s : c.steps) {
    PrecisionGuard g(c.digits);
    o.require(s.b >= Real(s.n + 1), "b_" + std::to_string(s.n));
    resid = std::max(resid, to_double(s.equal_mass_residual));
  }
  const Case3Step& s6 = c.steps.at(5);
  o.detail << "b_1..b_6=";
  for (const auto& s : c.steps) o.detail << to_double(s.b) << (s.n < 6 ? "," : "");
  o.detail << " max residual=" << resid << " weights(0,+1,-1)=" << s6.weight_zero << "," << s6.weight_plus << ","
           << s6.weight_minus;
  o.require(resid < kCase3ResidualTol, "residual");
  o.require(std::abs(s6.weight_zero - 0.5) < kCase3WeightTol && std::abs(s6.weight_plus - 0.25) < kCase3WeightTol &&
                std::abs(s6.weight_minus - 0.25) < kCase3WeightTol,
            "weights");
}

void crit_monotonicity(Outcome& o) {
  for (const auto& s : monotonicity_subjects()) {
    const ScanResult r = check_monotonicity(s, 8, kCtx);
    int flips = 0;
    bool all = true;
    for (std::size_t i = 0; i < r.verdicts.size(); ++i) {
      all = all && r.verdicts[i].real_zeros();
      if (i > 0 && r.verdicts[i - 1].real_zeros() && !r.verdicts[i].real_zeros()) ++flips;
    }
    o.detail << s.name << (all ? ":ok " : ":FLIP ");
    o.require(r.verdicts.front().real_zeros(), s.name + " lambda0");
    o.require(flips == 0 && r.monotone, s.name);
  }
}

void crit_product_rep(Outcome& o) {
  for (double b0 : {0.5, 1.0, 3.0}) {
    const ProductRepCheck p = product_rep_check(EvenMeasure::gaussian(b0), {-5, 5, -1, 1}, 10, kCtx);
    o.require(p.rep.y.empty() && std::abs(p.second_moment - 2 * p.rep.B) < kGaussianMomentTol, "gaussian");
  }
  std::vector<double> resid;
  for (int K : {100, 1000, 10000}) {
    const ProductRepCheck p =
        product_rep_check(EvenMeasure::symmetric_atoms({{1.0, 1.0}}), {-1, (K + 1.5) * M_PI, -1, 1}, K, kCtx);
    o.require(p.rep.truncation_count == K, "zeros found");
    o.require(p.within_allowance, "allowance K=" + std::to_string(K));
    o.detail << "K=" << K << " residual=" << p.residual << " allowance=" << p.tail_allowance << "; ";
    resid.push_back(p.residual);
  }
  for (std::size_t i = 1; i < resid.size(); ++i) {
    o.require(std::abs(resid[i - 1] / resid[i] / 10.0 - 1.0) < kConvergenceRatioTol, "1/K convergence");
  }
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
      {"Case-2 threshold", crit_case2_threshold},
      {"Case-5 thresholds", crit_case5_threshold},
      {"Case-6 offender", crit_case6_offender},
      {"Case-8 zeros", crit_case8_zeros},
      {"xi oracle agreement", crit_xi_oracle},
      {"theta identity", crit_theta_identity},
      {"Lehmer formula", crit_lehmer_formula},
      {"zero flow", crit_flow_checks},
      {"backward heat residual", crit_heat_residual},
      {"Lee-Yang suite", crit_lee_yang},
      {"Case-3 construction", crit_case3_construction},
      {"universal-factor monotonicity", crit_monotonicity},
      {"second moment / product representation", crit_product_rep},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    const auto t0 = Clock::now();
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " exception: " << e.what();
    }
    failures += o.pass ? 0 : 1;
    std::cout << (o.pass ? "PASS " : "FAIL ") << i + 1 << ". " << criteria[i].first << " (" << seconds_since(t0)
              << " s): " << o.detail.str() << std::endl;
  }
  std::cout << criteria.size() - failures << "/" << criteria.size() << " criteria passed" << std::endl;
  return failures;
}

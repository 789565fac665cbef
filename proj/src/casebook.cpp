#include "dbn/casebook.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

namespace dbn {

EvenMeasure case2_measure() { return EvenMeasure::symmetric_atoms({{0.0, 2.0 / 3.0}, {1.0, 1.0 / 3.0}}); }

bool case2_closed_form_real(double b) {
  // Discriminant of (e^b/6) y^2 + (2/3) y + e^b/6 is non-positive iff e^b >= 2.
  return std::exp(b) >= 2.0;
}

EvenMeasure case5_measure(double b0) {
  return convolve_gaussian(EvenMeasure::symmetric_atoms({{0.0, 0.6}, {1.0, 0.4}}), b0);
}

double case5_threshold(double b0) { return b0 - b0 * b0 / (b0 + std::log(1.5)); }

EvenMeasure case6_measure() {
  DensitySpec d;
  d.kind = DensityKind::Case6;
  return EvenMeasure::named(d);
}

EvenMeasure case8_measure() {
  DensitySpec d;
  d.kind = DensityKind::Case8;
  return EvenMeasure::named(d);
}

EvenMeasure case1_dbn_measure() {
  DensitySpec d;
  d.kind = DensityKind::DBNClass;
  d.m = 1;
  d.alpha = 1.0;
  d.beta = 0.5;
  d.a_j = {2.0};
  return EvenMeasure::named(d);
}

EvenMeasure case9_absexp_measure() {
  DensitySpec d;
  d.kind = DensityKind::AbsExpGaussian;
  d.a = 1.0;
  d.lambda = 1.0;
  return EvenMeasure::named(d);
}

EvenMeasure case9_polydecay_measure() {
  DensitySpec d;
  d.kind = DensityKind::PolyDecayGaussian;
  d.theta = 1.0;
  d.lambda = 1.0;
  return EvenMeasure::named(d);
}

bool CaseReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CaseCheck& c) { return c.pass; });
}

namespace {

std::string fmt(double x, int prec = 10) {
  std::ostringstream os;
  os.precision(prec);
  os << x;
  return os.str();
}

std::string fmt(std::complex<double> z) { return fmt(z.real()) + (z.imag() < 0 ? "-" : "+") + fmt(std::abs(z.imag())) + "i"; }

std::string verdict_pattern(const ScanResult& s) {
  std::string p;
  for (const auto& v : s.verdicts) p += v.real_zeros() ? 'T' : 'F';
  return p;
}

void check(CaseReport& r, const std::string& name, bool pass, const std::string& details) {
  r.checks.push_back({name, pass, details});
}

// Runs a check body; an exception becomes a failed check.
template <class F>
void guarded(CaseReport& r, const std::string& name, F&& body) {
  try {
    body();
  } catch (const std::exception& e) {
    check(r, name, false, std::string("error: ") + e.what());
  }
}

void tail_check(CaseReport& r, const EvenMeasure& m) {
  const TailSet t = tail_set(m);
  check(r, "tail_set", t == r.claimed_tail, "computed " + t.describe() + ", claimed " + r.claimed_tail.describe());
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

CaseReport case1(const PrecisionContext& ctx) {
  CaseReport r;
  r.case_id = 1;
  r.measure = case1_dbn_measure();
  r.claimed_tail = TailSet::all_reals();
  r.claimed_P = "(-inf, inf)";
  tail_check(r, *r.measure);
  const std::vector<double> grid{-5, -1, 0, 1, 5};
  guarded(r, "dbn_class_scan", [&] {
    const ScanResult s = scan_lambda(*r.measure, grid, {-8, 8, -2, 2}, ctx);
    check(r, "dbn_class_scan", verdict_pattern(s) == "TTTTT", "verdicts " + verdict_pattern(s) + " on {-5,-1,0,1,5}");
  });
  guarded(r, "two_atom_scan", [&] {
    const ScanResult s = scan_lambda(EvenMeasure::symmetric_atoms({{1.0, 1.0}}), grid, {-10, 10, -2, 2}, ctx);
    check(r, "two_atom_scan", verdict_pattern(s) == "TTTTT", "verdicts " + verdict_pattern(s) + " on {-5,-1,0,1,5}");
  });
  return r;
}

CaseReport case2(const PrecisionContext& ctx) {
  CaseReport r;
  r.case_id = 2;
  r.measure = case2_measure();
  r.claimed_tail = TailSet::all_reals();
  r.claimed_P = "[ln 2, inf)";
  tail_check(r, *r.measure);
  const Rectangle window{-20, 20, -3, 3};
  const std::vector<double> grid{0.5, 0.69, 0.70, 1.0};
  {
    std::string p;
    for (double b : grid) p += case2_closed_form_real(b) ? 'T' : 'F';
    const bool edge = case2_closed_form_real(std::log(2.0) + 1e-12) && !case2_closed_form_real(std::log(2.0) - 1e-9);
    check(r, "closed_form_criterion", p == "FFTT" && edge, "quadratic-root criterion " + p + ", flips at ln 2");
  }
  guarded(r, "window_scan", [&] {
    const ScanResult s = scan_lambda(*r.measure, grid, window, ctx);
    check(r, "window_scan", verdict_pattern(s) == "FFTT", "verdicts " + verdict_pattern(s) + " on {0.5,0.69,0.70,1.0}");
  });
  guarded(r, "bisection", [&] {
    const auto t0 = std::chrono::steady_clock::now();
    const BisectResult b = bisect_lambda(*r.measure, 0.0, 1.0, window, 1e-7, ctx);
    r.values["threshold"] = b.lambda_star;
    r.values["bisection_seconds"] = seconds_since(t0);
    const double err = std::abs(b.lambda_star - std::log(2.0));
    check(r, "bisection", err <= 1e-6, "lambda* = " + fmt(b.lambda_star, 12) + ", |lambda* - ln 2| = " + fmt(err, 3));
  });
  guarded(r, "offender_location", [&] {
    // Roots y = (-2 +- sqrt(4 - e^{2b})) / e^b are negative reals; z = pi -+ i ln|y| (mod 2 pi).
    const double b = 0.5;
    const double y = (-2.0 + std::sqrt(4.0 - std::exp(2 * b))) / std::exp(b);
    const double expect = std::abs(std::log(std::abs(y)));
    const RealityVerdict v = verify_all_real(*r.measure, b, window, ctx);
    const double got = v.worst_offender ? std::abs(v.worst_offender->imag()) : 0.0;
    const double re_mod = v.worst_offender ? std::remainder(v.worst_offender->real() - M_PI, 2 * M_PI) : 1.0;
    const bool ok = !v.all_real && std::abs(got - expect) < 1e-8 && std::abs(re_mod) < 1e-8;
    check(r, "offender_location", ok,
          "b=0.5 worst offender " + (v.worst_offender ? fmt(*v.worst_offender) : std::string("none")) +
              ", closed-form |Im| " + fmt(expect, 12));
  });
  guarded(r, "double_zeros_at_threshold", [&] {
    const AnalyticFunction f = AnalyticFunction::from_measure(*r.measure, std::log(2.0), ctx);
    const auto zs = locate_real_zeros(f, 0.0, 10.0, ctx);
    bool ok = zs.size() == 2;
    for (std::size_t i = 0; ok && i < zs.size(); ++i) {
      ok = zs[i].multiplicity == 2 && std::abs(zs[i].z().real() - (2 * i + 1) * M_PI) < 1e-8;
    }
    check(r, "double_zeros_at_threshold", ok, "b=ln 2 real zeros on [0,10]: " + std::to_string(zs.size()) +
                                                  " with multiplicity 2 at pi, 3 pi expected");
  });
  return r;
}

CaseReport case3(const PrecisionContext& ctx) {
  CaseReport r;
  r.case_id = 3;
  r.claimed_tail = TailSet::all_reals();
  r.claimed_P = "empty";
  guarded(r, "construction", [&] {
    const Case3Construction c = construct_case3(8, ctx);
    bool b_ok = true, mass_ok = true;
    double worst_res = 0;
    for (const auto& s : c.steps) {
      if (s.n <= 6 && !(s.b >= s.n + 1)) b_ok = false;
      const double res = to_double(s.equal_mass_residual);
      worst_res = std::max(worst_res, res);
      if (!(res < 1e-20)) mass_ok = false;
    }
    check(r, "b_n_lower_bound", b_ok, "b_n >= n + 1 for n <= 6");
    check(r, "equal_mass_identity", mass_ok, "max log-domain residual " + fmt(worst_res, 3));
    const Case3Step& s6 = c.steps.at(5);
    const double dev = std::max({std::abs(s6.weight_zero - 0.5), std::abs(s6.weight_plus - 0.25),
                                 std::abs(s6.weight_minus - 0.25)});
    r.values["weight_zero_n6"] = s6.weight_zero;
    r.values["weight_plus_n6"] = s6.weight_plus;
    check(r, "rescaled_limit", dev < 1e-3,
          "n=6 weights (" + fmt(s6.weight_zero) + ", " + fmt(s6.weight_plus) + ", " + fmt(s6.weight_minus) + ")");
    for (const auto& s : c.steps) r.values["b_" + std::to_string(s.n)] = to_double(s.b);
  });
  return r;
}

CaseReport case4(const PrecisionContext& ctx) {
  CaseReport r;
  r.case_id = 4;
  const double b0 = 1.0;
  r.measure = EvenMeasure::gaussian(b0, std::sqrt(b0 / M_PI));
  r.claimed_tail = TailSet::open_up_to(b0);
  r.claimed_P = "(-inf, b0)";
  tail_check(r, *r.measure);
  guarded(r, "verdicts_below_b0", [&] {
    const ScanResult s = scan_lambda(*r.measure, {b0 - 2, b0 - 0.1}, {-10, 10, -2, 2}, ctx);
    check(r, "verdicts_below_b0", verdict_pattern(s) == "TT", "verdicts " + verdict_pattern(s) + " at b0-2, b0-0.1");
  });
  check(r, "not_entire_at_b0", !entire_at(*r.measure, b0), "entireness fails at lambda = b0");
  return r;
}

CaseReport case5(const PrecisionContext& ctx) {
  CaseReport r;
  r.case_id = 5;
  r.measure = case5_measure(10.0);
  r.claimed_tail = TailSet::open_up_to(10.0);
  r.claimed_P = "[Lambda0, b0)";
  tail_check(r, *r.measure);
  for (double b0 : {5.0, 10.0, 20.0}) {
    const std::string name = "bisection_b0_" + fmt(b0);
    guarded(r, name, [&] {
      const BisectResult b = bisect_lambda(case5_measure(b0), 0.0, b0 - 0.1, {-5, 5, -1, 1}, 1e-7, ctx);
      const double expect = case5_threshold(b0);
      const double err = std::abs(b.lambda_star - expect);
      r.values["threshold_b0_" + fmt(b0)] = b.lambda_star;
      check(r, name, err <= 1e-5,
            "lambda* = " + fmt(b.lambda_star, 12) + ", closed form " + fmt(expect, 12) + ", diff " + fmt(err, 3));
    });
  }
  return r;
}

CaseReport case6(const PrecisionContext& ctx) {
  CaseReport r;
  r.case_id = 6;
  r.measure = case6_measure();
  r.claimed_tail = TailSet::open_up_to(1.0);
  r.claimed_P = "empty";
  tail_check(r, *r.measure);
  for (double b : {0.0, 0.5}) {
    const std::string name = "offender_b_" + fmt(b);
    guarded(r, name, [&] {
      const RealityVerdict v = verify_all_real(*r.measure, b, {-3, 3, -3, 3}, ctx);
      const std::complex<double> expect(0.0, 2.0 * (1.0 - b));
      double err = std::numeric_limits<double>::infinity();
      std::complex<double> nearest;
      for (const auto& z : v.offenders) {
        if (std::abs(z.z() - expect) < err) {
          err = std::abs(z.z() - expect);
          nearest = z.z();
        }
      }
      r.values["offender_im_b_" + fmt(b)] = nearest.imag();
      r.values["offender_error_b_" + fmt(b)] = err;
      check(r, name, !v.all_real && err < 1e-8,
            "nearest offender to " + fmt(expect) + " at distance " + fmt(err, 3));
    });
  }
  return r;
}

CaseReport case7() {
  CaseReport r;
  r.case_id = 7;
  r.report_only = true;
  r.claimed_tail = TailSet::closed_up_to(0.0);
  r.claimed_P = "impossible: (-inf, b0] or [Lambda0, b0]";
  r.statement =
      "No even probability measure has P = (-inf, b0] or [Lambda0, b0] with Lambda0 < b0: the normalized "
      "measures at lambda_n = b0 - 1/n would converge weakly to a member of X with a Gaussian moment beyond b0.";
  return r;
}

CaseReport case8(const PrecisionContext& ctx) {
  CaseReport r;
  r.case_id = 8;
  r.measure = case8_measure();
  r.claimed_tail = TailSet::closed_up_to(0.0);
  r.claimed_P = "{0}";
  tail_check(r, *r.measure);
  guarded(r, "laplace_zeros", [&] {
    AnalyticFunction L(
        [](const Complex& w) {
          FunctionValue v;
          case8_laplace(w, v.value, v.derivative);
          return v;
        },
        false, true);
    const ZeroSet zs = locate_zeros(L, {-0.5, 0.5, -5, 5}, ctx);
    // cosh w: +-i pi/2, +-3i pi/2 (simple); 1 + cosh w: +-i pi (double).
    const std::vector<std::pair<double, int>> expect{{M_PI / 2, 1}, {M_PI, 2}, {1.5 * M_PI, 1}};
    bool ok = zs.count == 8;
    double worst = 0;
    for (const auto& [y, mult] : expect) {
      for (double s : {1.0, -1.0}) {
        double best = std::numeric_limits<double>::infinity();
        int m = 0;
        for (const auto& z : zs.zeros) {
          const double d = std::abs(z.z() - std::complex<double>(0, s * y));
          if (d < best) {
            best = d;
            m = z.multiplicity;
          }
        }
        worst = std::max(worst, best);
        if (!(best < 1e-8) || m != mult) ok = false;
      }
    }
    r.values["laplace_zero_max_error"] = worst;
    check(r, "laplace_zeros", ok, "count " + std::to_string(zs.count) + ", max distance to +-i pi/2, +-i pi, +-3i pi/2: " +
                                      fmt(worst, 3));
  });
  const Rectangle window{-4, 4, -1, 1};
  guarded(r, "real_at_b0", [&] {
    const RealityVerdict v = verify_all_real(*r.measure, 0.0, window, ctx);
    check(r, "real_at_b0", v.all_real, "lambda=0 window count " + std::to_string(v.window_count));
  });
  guarded(r, "nonreal_below_b0", [&] {
    const RealityVerdict v = verify_all_real(*r.measure, -0.1, window, ctx);
    check(r, "nonreal_below_b0", !v.all_real,
          "lambda=-0.1 offender " + (v.worst_offender ? fmt(*v.worst_offender) : std::string("none")));
  });
  return r;
}

CaseReport case9(const PrecisionContext& ctx) {
  CaseReport r;
  r.case_id = 9;
  r.measure = case9_absexp_measure();
  r.claimed_tail = TailSet::open_up_to(1.0);
  r.claimed_P = "empty";
  tail_check(r, *r.measure);
  check(r, "tail_set_polydecay", tail_set(case9_polydecay_measure()) == r.claimed_tail,
        "computed " + tail_set(case9_polydecay_measure()).describe());
  const std::vector<std::tuple<std::string, EvenMeasure, Rectangle>> subjects{
      {"absexp_offender", case9_absexp_measure(), {-5, 5, -3.6, 3.6}},
      {"polydecay_offender", case9_polydecay_measure(), {-5, 5, -4.5, 4.5}},
  };
  for (const auto& [name, m, window] : subjects) {
    guarded(r, name, [&] {
      const RealityVerdict v = verify_all_real(m, 0.0, window, ctx);
      if (v.worst_offender) {
        r.values[name + "_re"] = std::abs(v.worst_offender->real());
        r.values[name + "_im"] = std::abs(v.worst_offender->imag());
      }
      check(r, name, !v.all_real && v.worst_offender.has_value(),
            "window " + window.describe() + ": " + std::to_string(v.offenders.size()) + " nonreal zeros, worst " +
                (v.worst_offender ? fmt(*v.worst_offender) : std::string("none")));
    });
  }
  return r;
}

}  // namespace

CaseReport run_case(int case_id, const PrecisionContext& ctx) {
  ctx.validate();
  switch (case_id) {
    case 1: return case1(ctx);
    case 2: return case2(ctx);
    case 3: return case3(ctx);
    case 4: return case4(ctx);
    case 5: return case5(ctx);
    case 6: return case6(ctx);
    case 7: return case7();
    case 8: return case8(ctx);
    case 9: return case9(ctx);
  }
  throw Error(ErrorCode::InvalidArgument, "case id must be in 1..9, got " + std::to_string(case_id));
}

std::vector<CaseReport> run_all_cases(const PrecisionContext& ctx) {
  std::vector<CaseReport> out;
  for (int i = 1; i <= 9; ++i) out.push_back(run_case(i, ctx));
  return out;
}

// ---------------------------------------------------------------------------

namespace {

Real logsumexp(const std::vector<Real>& x) {
  Real m = x.front();
  for (const auto& v : x) {
    if (v > m) m = v;
  }
  Real s(0);
  for (const auto& v : x) s += exp(v - m);
  return m + log(s);
}

// log of sum_{k<=n} a_k e^{b D_k} and the weighted mean of D_k.
void mass_below(const std::vector<Real>& A, const std::vector<Real>& D, int n, const Real& b, Real& lse, Real& mean_d) {
  std::vector<Real> e(n);
  for (int k = 0; k < n; ++k) e[k] = A[k] + b * D[k];
  lse = logsumexp(e);
  mean_d = 0;
  for (int k = 0; k < n; ++k) mean_d += exp(e[k] - lse) * D[k];
}

}  // namespace

Case3Construction construct_case3(int n_max, const PrecisionContext& ctx) {
  if (n_max < 1 || n_max > 8) throw Error(ErrorCode::InvalidArgument, "construct_case3 needs 1 <= n_max <= 8");
  Case3Construction c;
  c.n_max = n_max;
  c.digits = std::max(ctx.working_digits, 150u);
  PrecisionGuard guard(c.digits);

  const int K = n_max + 1;
  std::vector<Real> D(K);  // d_k^2 = e^{2 k^2}
  for (int k = 1; k <= K; ++k) {
    c.log_d.push_back(Real(k * k));
    D[k - 1] = exp(Real(2 * k * k));
  }
  std::vector<Real> A{Real(0)};  // log a_1 = 0
  Real b_prev(0);
  const Real tiny = pow(Real(10), -Real(static_cast<long>(c.digits) - 10));

  for (int n = 1; n <= n_max; ++n) {
    const Real Dn1 = D[n];
    Real lse, mean;
    // (induction3): B >= n+1  <=>  log a <= lse(A_k + (n+1) D_k) - (n+1) D_{n+1}.
    const Real theta(n + 1);
    mass_below(A, D, n, theta, lse, mean);
    Real best = lse - theta * Dn1;
    std::string binding = "B >= n+1";
    if (n >= 2) {
      // (induction1): a e^{b_{n-1} D_{n+1}} <= a_n e^{b_{n-1} D_n} / (n+1).
      const Real u1 = A[n - 1] + b_prev * (D[n - 1] - Dn1) - log(Real(n + 1));
      if (u1 < best) {
        best = u1;
        binding = "mass ratio to a_n";
      }
      // (induction2): B >= b_{n-1}.
      mass_below(A, D, n, b_prev, lse, mean);
      const Real u2 = lse - b_prev * Dn1;
      if (u2 < best) {
        best = u2;
        binding = "B >= b_{n-1}";
      }
    }
    const Real An1 = best;

    // phi(b) = A_{n+1} + b D_{n+1} - lse(A_k + b D_k) is increasing and concave;
    // Newton from a point with phi <= 0 converges monotonically from the left.
    Real b = n >= 2 && b_prev > theta ? b_prev : theta;
    mass_below(A, D, n, b, lse, mean);
    Real phi = An1 + b * Dn1 - lse;
    if (phi > tiny * Dn1 * b) {
      throw Error(ErrorCode::InfeasibleConstraint,
                  "case 3 step n=" + std::to_string(n) + ": equal-mass root below the bound set by " + binding);
    }
    for (int it = 0; it < 200; ++it) {
      const Real step = -phi / (Dn1 - mean);
      b += step;
      mass_below(A, D, n, b, lse, mean);
      phi = An1 + b * Dn1 - lse;
      if (abs(step) <= tiny * abs(b)) break;
    }
    // When a lower-bound constraint binds, B equals that bound exactly.
    if (binding == "B >= n+1") b = theta;
    if (binding == "B >= b_{n-1}") b = b_prev;
    mass_below(A, D, n, b, lse, mean);
    phi = An1 + b * Dn1 - lse;
    A.push_back(An1);

    Case3Step s;
    s.n = n;
    s.log_a_next = An1;
    s.b = b;
    s.binding = binding;
    s.equal_mass_residual = abs(phi);
    if (!(b >= theta) || (n >= 2 && !(b >= b_prev))) {
      throw Error(ErrorCode::InfeasibleConstraint,
                  "case 3 step n=" + std::to_string(n) + ": lower bound on b violated (" + binding + ")");
    }
    c.steps.push_back(s);
    b_prev = b;
  }
  c.log_a = A;

  // Rescaled weights of e^{b_n t^2} d rho at scale d_{n+1}, over all constructed atoms.
  for (auto& s : c.steps) {
    const int n = s.n;
    std::vector<Real> e(K);
    for (int k = 0; k < K; ++k) e[k] = A[k] + s.b * D[k];
    const Real total = logsumexp(e);
    double w0 = 0, w1 = 0;
    for (int k = 0; k < K; ++k) {
      const double mass = to_double(exp(e[k] - total));
      const Real u = exp(c.log_d[k] - c.log_d[n]);  // d_k / d_{n+1}
      if (u < Real(0.5)) w0 += mass;
      if (abs(u - 1) < Real(0.5)) w1 += mass;
    }
    s.weight_zero = w0;
    s.weight_plus = 0.5 * w1;
    s.weight_minus = 0.5 * w1;
  }
  return c;
}

// ---------------------------------------------------------------------------

ProductRepCheck product_rep_check(const EvenMeasure& m, const Rectangle& window, int k_trunc,
                                  const PrecisionContext& ctx) {
  if (k_trunc < 0) throw Error(ErrorCode::InvalidArgument, "k_trunc must be non-negative");
  if (!(window.re_max > 0)) throw Error(ErrorCode::InvalidArgument, "product_rep_check needs window.re_max > 0");
  PrecisionGuard guard(ctx);
  const AnalyticFunction f = AnalyticFunction::from_measure(m, 0.0, ctx);
  if (!f.real_on_axis() || !f.even()) throw Error(ErrorCode::InvalidArgument, "product_rep_check needs an even measure");

  const std::vector<Zero> zs = locate_real_zeros(f, 0.0, window.re_max, ctx);
  std::vector<double> y;
  for (const auto& z : zs) {
    if (z.z().real() <= 0) continue;
    for (int i = 0; i < z.multiplicity; ++i) y.push_back(z.z().real());
  }
  ProductRepCheck out;
  const std::size_t K = std::min<std::size_t>(y.size(), static_cast<std::size_t>(k_trunc));
  // Zeros beyond the cutoff Y are omitted; with K zeros below Y the omitted ones
  // contribute about K / Y^2 to sum 1/y^2.
  double Y = window.re_max;
  if (y.size() > K && K > 0) Y = 0.5 * (y[K - 1] + y[K]);
  out.rep.y.assign(y.begin(), y.begin() + K);
  out.rep.truncation_count = static_cast<int>(K);
  const double tail = K > 0 ? static_cast<double>(K) / (Y * Y) : 0.0;
  out.tail_allowance = 1.5 * 2.0 * tail;

  // B from the imaginary axis: log H(iy)/H(0) = B y^2 + sum log(1 + y^2/y_k^2).
  const Real h0 = f.at(0, 0).value.re;
  auto g = [&](double t) {
    const Real h = f.at(0, t).value.re;
    if (!(h > 0) || !(h0 > 0)) throw Error(ErrorCode::FitIllConditioned, "H(iy) not positive on the fitting points");
    Real s = log(h / h0);
    for (double yk : out.rep.y) s -= log(1 + Real(t) * t / (Real(yk) * yk));
    return s - Real(t) * t * tail;
  };
  const double t1 = 0.5, t2 = 1.0;
  const Real slope = (g(t2) - g(t1)) / Real(t2 * t2 - t1 * t1);
  out.rep.B_fit = to_double(slope);
  if (!std::isfinite(out.rep.B_fit)) throw Error(ErrorCode::FitIllConditioned, "non-finite imaginary-axis slope");
  out.rep.structural_B = m.is_atomic();
  out.rep.B = out.rep.structural_B ? 0.0 : std::max(out.rep.B_fit, 0.0);

  out.second_moment = to_double(second_moment(m, ctx));
  Real partial(out.rep.B);
  for (double yk : out.rep.y) partial += 1 / (Real(yk) * yk);
  out.partial = 2 * to_double(partial);
  out.residual = std::abs(out.second_moment - out.partial);
  out.within_allowance = out.residual <= out.tail_allowance + 1e-12 * std::abs(out.second_moment);
  return out;
}

// ---------------------------------------------------------------------------

std::vector<MonotonicitySubject> monotonicity_subjects() {
  return {
      {"case1_two_atom", EvenMeasure::symmetric_atoms({{1.0, 1.0}}), -5.0, 5.0, {-10, 10, -2, 2}},
      {"case1_dbn_class", case1_dbn_measure(), -1.0, 3.0, {-8, 8, -2, 2}},
      {"case2", case2_measure(), 0.70, 2.0, {-20, 20, -3, 3}},
      {"case4_gaussian", EvenMeasure::gaussian(1.0, std::sqrt(1.0 / M_PI)), -2.0, 0.9, {-10, 10, -2, 2}},
      {"case5_b0_10", case5_measure(10.0), 0.39, 5.0, {-5, 5, -1, 1}},
  };
}

ScanResult check_monotonicity(const MonotonicitySubject& s, int steps, const PrecisionContext& ctx) {
  if (steps < 1) throw Error(ErrorCode::InvalidArgument, "steps must be >= 1");
  std::vector<double> grid;
  for (int i = 0; i <= steps; ++i) grid.push_back(s.lambda0 + (s.lambda_hi - s.lambda0) * i / steps);
  VerifyOptions opt;
  opt.locate_offenders = false;
  return scan_lambda(s.measure, grid, s.window, ctx, opt);
}

}  // namespace dbn

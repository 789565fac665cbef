#include "dbn/zeros.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace dbn {

namespace bmp = boost::multiprecision;

AnalyticFunction::AnalyticFunction(Fn f, bool real_on_axis, bool even)
    : f_(std::move(f)), real_on_axis_(real_on_axis), even_(even), memo_(std::make_shared<Memo>()) {}

AnalyticFunction AnalyticFunction::from_measure(const EvenMeasure& m, double lambda, const PrecisionContext& ctx) {
  auto h = std::make_shared<HEvaluator>(m, lambda, ctx);
  const bool even = m.is_even();
  return AnalyticFunction(
      [h](const Complex& z) {
        TransformEval e = h->eval(z);
        return FunctionValue{e.value, e.derivative, e.abs_error_estimate};
      },
      even, even);
}

FunctionValue AnalyticFunction::operator()(const Complex& z) const {
  {
    std::lock_guard<std::mutex> lock(memo_->mutex);
    ++memo_->calls;
  }
  return f_(z);
}

FunctionValue AnalyticFunction::at(double re, double im) const {
  const auto key = std::make_pair(re, im);
  {
    std::lock_guard<std::mutex> lock(memo_->mutex);
    auto it = memo_->values.find(key);
    if (it != memo_->values.end()) return it->second;
  }
  FunctionValue v = (*this)(Complex(Real(re), Real(im)));
  std::lock_guard<std::mutex> lock(memo_->mutex);
  memo_->values.emplace(key, v);
  return v;
}

std::size_t AnalyticFunction::evaluations() const {
  std::lock_guard<std::mutex> lock(memo_->mutex);
  return memo_->calls;
}

// ---------------------------------------------------------------------------

void Rectangle::validate() const {
  if (!(re_min < re_max) || !(im_min < im_max) || !std::isfinite(re_min) || !std::isfinite(re_max) ||
      !std::isfinite(im_min) || !std::isfinite(im_max)) {
    throw Error(ErrorCode::InvalidArgument, "rectangle needs re_min < re_max and im_min < im_max");
  }
}

bool Rectangle::contains(const std::complex<double>& z, double pad) const {
  return z.real() >= re_min - pad && z.real() <= re_max + pad && z.imag() >= im_min - pad && z.imag() <= im_max + pad;
}

double Rectangle::diameter() const { return std::hypot(re_max - re_min, im_max - im_min); }

Rectangle Rectangle::grown(double fraction) const {
  const double dx = (re_max - re_min) * fraction / 2;
  const double dy = (im_max - im_min) * fraction / 2;
  return {re_min - dx, re_max + dx, im_min - dy, im_max + dy};
}

std::string Rectangle::describe() const {
  std::ostringstream os;
  os.precision(12);
  os << "[" << re_min << "," << re_max << "]x[" << im_min << "," << im_max << "]";
  return os.str();
}

double real_axis_tolerance(const std::complex<double>& z, const PrecisionContext& ctx) {
  return std::pow(10.0, -static_cast<double>(ctx.working_digits) / 3.0) * (1.0 + std::abs(z));
}

// ---------------------------------------------------------------------------
// Argument principle

namespace {

struct ContourHit {
  std::complex<double> where;
};

struct EdgeResult {
  double arg = 0.0;
  std::complex<double> integral{0.0, 0.0};  // Simpson estimate of the integral of f'/f
};

std::complex<double> log_deriv(const FunctionValue& v) { return (v.derivative / v.value).to_std(); }

double arg_ratio(const FunctionValue& num, const FunctionValue& den) { return to_double(arg(num.value / den.value)); }

double log_abs_ratio(const FunctionValue& num, const FunctionValue& den) {
  return to_double(bmp::log(abs(num.value)) - bmp::log(abs(den.value)));
}

FunctionValue checked_eval(const AnalyticFunction& f, std::complex<double> z, double diam, const CountOptions& opt) {
  FunctionValue v = f.at(z.real(), z.imag());
  if (v.value.re == 0 && v.value.im == 0) throw ContourHit{z};
  const Real a = abs(v.value);
  const Real d = abs(v.derivative);
  // Newton distance to the nearest zero.
  if (d > 0 && a / d < Real(opt.near_zero_ratio * diam)) throw ContourHit{z};
  return v;
}

EdgeResult integrate_edge(const AnalyticFunction& f, std::complex<double> z0, std::complex<double> z1, double diam,
                          const CountOptions& opt) {
  EdgeResult out;
  const double len = std::abs(z1 - z0);
  const int n = std::max(opt.min_segments_per_edge, static_cast<int>(std::ceil(len / std::max(diam / 8, 1e-300))));
  struct Seg {
    std::complex<double> a, b;
    FunctionValue fa, fb;
  };
  std::vector<Seg> stack;
  std::vector<std::complex<double>> pts(n + 1);
  std::vector<FunctionValue> vals(n + 1);
  for (int i = 0; i <= n; ++i) {
    pts[i] = (i == n) ? z1 : z0 + (z1 - z0) * (static_cast<double>(i) / n);
    vals[i] = checked_eval(f, pts[i], diam, opt);
  }
  for (int i = n - 1; i >= 0; --i) stack.push_back({pts[i], pts[i + 1], vals[i], vals[i + 1]});
  while (!stack.empty()) {
    Seg s = stack.back();
    stack.pop_back();
    const std::complex<double> m = 0.5 * (s.a + s.b);
    FunctionValue fm = checked_eval(f, m, diam, opt);
    const double d1 = arg_ratio(fm, s.fa);
    const double d2 = arg_ratio(s.fb, fm);
    const std::complex<double> simpson = (s.b - s.a) / 6.0 * (log_deriv(s.fa) + 4.0 * log_deriv(fm) + log_deriv(s.fb));
    const double dlog = log_abs_ratio(s.fb, s.fa);
    const bool ok = std::abs(d1) <= opt.max_arg_step && std::abs(d2) <= opt.max_arg_step &&
                    std::abs(simpson.imag() - (d1 + d2)) <= opt.consistency &&
                    std::abs(simpson.real() - dlog) <= opt.consistency;
    if (ok) {
      out.arg += d1 + d2;
      out.integral += simpson;
      continue;
    }
    if (std::abs(s.b - s.a) < 1e-13 * diam) throw ContourHit{m};
    stack.push_back({m, s.b, fm, s.fb});
    stack.push_back({s.a, m, s.fa, fm});
  }
  return out;
}

struct Winding {
  int count;
  double raw;
};

// Throws ContourHit when a zero is on or very near the contour.
Winding winding_once(const AnalyticFunction& f, const Rectangle& r, const CountOptions& opt) {
  const double diam = r.diameter();
  const std::complex<double> c00(r.re_min, r.im_min), c10(r.re_max, r.im_min), c11(r.re_max, r.im_max),
      c01(r.re_min, r.im_max);
  double arg = 0;
  std::complex<double> integral{};
  for (auto [a, b] : {std::pair{c00, c10}, std::pair{c10, c11}, std::pair{c11, c01}, std::pair{c01, c00}}) {
    EdgeResult e = integrate_edge(f, a, b, diam, opt);
    arg += e.arg;
    integral += e.integral;
  }
  const double two_pi = 2 * std::numbers::pi;
  return {static_cast<int>(std::lround(arg / two_pi)), integral.imag() / two_pi};
}

// Winding with subdivision on non-integral results; no perturbation.
Winding winding_subdivided(const AnalyticFunction& f, const Rectangle& r, const CountOptions& opt, int depth,
                           int& subdivisions) {
  Winding w = winding_once(f, r, opt);
  if (std::abs(w.raw - w.count) <= opt.winding_tol) return w;
  if (depth >= opt.max_depth) {
    throw Error(ErrorCode::WindingNonIntegral, "winding number not integral on " + r.describe() +
                                                   " (raw=" + std::to_string(w.raw) + ")");
  }
  ++subdivisions;
  const double fx = 0.5 + 0.0173 * (depth + 1), fy = 0.5 - 0.0131 * (depth + 1);
  const double xm = r.re_min + fx * (r.re_max - r.re_min);
  const double ym = r.im_min + fy * (r.im_max - r.im_min);
  Winding total{0, 0.0};
  for (const Rectangle& s : {Rectangle{r.re_min, xm, r.im_min, ym}, Rectangle{xm, r.re_max, r.im_min, ym},
                             Rectangle{r.re_min, xm, ym, r.im_max}, Rectangle{xm, r.re_max, ym, r.im_max}}) {
    Winding ws = winding_subdivided(f, s, opt, depth + 1, subdivisions);
    total.count += ws.count;
    total.raw += ws.raw;
  }
  return total;
}

}  // namespace

WindingResult count_zeros_detailed(const AnalyticFunction& f, const Rectangle& rect, const PrecisionContext& ctx,
                                   const CountOptions& opt) {
  rect.validate();
  PrecisionGuard guard(ctx);
  WindingResult out;
  Rectangle r = rect;
  for (int attempt = 0;; ++attempt) {
    try {
      Winding w = winding_subdivided(f, r, opt, 0, out.subdivisions);
      out.count = w.count;
      out.raw = w.raw;
      out.rect = r;
      out.perturbations = attempt;
      return out;
    } catch (const ContourHit& hit) {
      if (attempt >= opt.max_perturb) {
        std::ostringstream os;
        os << "zero on the contour near (" << hit.where.real() << "," << hit.where.imag() << ") of "
           << rect.describe();
        throw Error(ErrorCode::ContourZero, os.str());
      }
      r = rect.grown(opt.perturb_fraction * (attempt + 1));
    }
  }
}

int count_zeros(const AnalyticFunction& f, const Rectangle& rect, const PrecisionContext& ctx,
                const CountOptions& opt) {
  return count_zeros_detailed(f, rect, ctx, opt).count;
}

// ---------------------------------------------------------------------------
// Real zeros

namespace {

double real_value(const FunctionValue& v) { return to_double(v.value.re); }

int sgn(const Real& x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

Real step_tolerance(const Real& x, const PrecisionContext& ctx) {
  return bmp::pow(Real(10), -Real(ctx.working_digits) / 2) * (1 + bmp::abs(x));
}

// Simple root of the real-valued f in [a, b] with f(a) f(b) < 0: safeguarded Newton.
Real refine_bracket(const AnalyticFunction& f, Real a, Real b, Real fa, const PrecisionContext& ctx) {
  Real x = (a + b) / 2;
  for (int it = 0; it < 400; ++it) {
    FunctionValue v = f(Complex(x, Real(0)));
    const Real fx = v.value.re;
    const Real dfx = v.derivative.re;
    if (fx == 0) return x;
    if (sgn(fx) == sgn(fa)) {
      a = x;
      fa = fx;
    } else {
      b = x;
    }
    Real next;
    bool newton_ok = false;
    if (dfx != 0) {
      next = x - fx / dfx;
      newton_ok = (a < b) ? (next > a && next < b) : (next > b && next < a);
    }
    if (!newton_ok) next = (a + b) / 2;
    const Real step = bmp::abs(next - x);
    x = next;
    if (step < step_tolerance(x, ctx) || bmp::abs(b - a) < step_tolerance(x, ctx)) {
      if (newton_ok) {
        FunctionValue w = f(Complex(x, Real(0)));
        if (w.derivative.re != 0) x -= w.value.re / w.derivative.re;
      }
      return x;
    }
  }
  throw Error(ErrorCode::RootFinderNonConvergence, "real root refinement did not converge");
}

// Root of f' in [a, b] with f'(a) f'(b) < 0 by the Illinois variant of regula falsi.
Real critical_point(const AnalyticFunction& f, Real a, Real b, const PrecisionContext& ctx) {
  Real ga = f(Complex(a, Real(0))).derivative.re;
  Real gb = f(Complex(b, Real(0))).derivative.re;
  int side = 0;
  Real x = a;
  for (int it = 0; it < 400; ++it) {
    x = (a * gb - b * ga) / (gb - ga);
    const Real gx = f(Complex(x, Real(0))).derivative.re;
    if (gx == 0 || bmp::abs(b - a) < step_tolerance(x, ctx)) return x;
    if (sgn(gx) == sgn(gb)) {
      b = x;
      gb = gx;
      if (side == -1) ga /= 2;
      side = -1;
    } else {
      a = x;
      ga = gx;
      if (side == 1) gb /= 2;
      side = 1;
    }
    if (bmp::abs(b - a) < step_tolerance(x, ctx)) return x;
  }
  return x;
}

Zero make_zero(const AnalyticFunction& f, const Real& x, int mult, bool cluster) {
  Zero z;
  z.location = Complex(x, Real(0));
  z.multiplicity = mult;
  z.cluster = cluster;
  z.residual = to_double(abs(f(z.location).value));
  return z;
}

std::vector<Zero> scan_real(const AnalyticFunction& f, double a, double b, double step, const PrecisionContext& ctx,
                            const RealScanOptions& opt) {
  const int n = std::max(4, static_cast<int>(std::ceil((b - a) / step)));
  std::vector<double> xs(n + 1);
  std::vector<FunctionValue> vs(n + 1);
  double maxabs = 0;
  for (int i = 0; i <= n; ++i) {
    xs[i] = (i == n) ? b : a + (b - a) * i / n;
    vs[i] = f.at(xs[i], 0.0);
    maxabs = std::max(maxabs, std::abs(real_value(vs[i])));
  }
  std::vector<Zero> out;
  auto add_pair_or_cluster = [&](const Real& l, const Real& m, const Real& r, const Real& fl, const Real& fm) {
    Real z1 = refine_bracket(f, l, m, fl, ctx);
    Real z2 = refine_bracket(f, m, r, fm, ctx);
    if (bmp::abs(z2 - z1) < Real(opt.cluster_floor)) {
      out.push_back(make_zero(f, (z1 + z2) / 2, 2, true));
    } else {
      out.push_back(make_zero(f, z1, 1, false));
      out.push_back(make_zero(f, z2, 1, false));
    }
  };
  for (int i = 0; i < n; ++i) {
    const Real& fi = vs[i].value.re;
    const Real& fj = vs[i + 1].value.re;
    if (fi == 0) {
      const bool dbl = bmp::abs(vs[i].derivative.re) <= Real(opt.double_zero_rel * maxabs);
      out.push_back(make_zero(f, Real(xs[i]), dbl ? 2 : 1, false));
      continue;
    }
    if (sgn(fi) * sgn(fj) < 0) {
      out.push_back(make_zero(f, refine_bracket(f, Real(xs[i]), Real(xs[i + 1]), fi, ctx), 1, false));
      continue;
    }
    // Tangency or a close pair hidden between samples: look for a dip of |f|.
    if (i == 0) continue;
    const Real& fp = vs[i - 1].value.re;
    if (sgn(fp) != sgn(fi) || sgn(fj) != sgn(fi) || fj == 0) continue;
    if (!(bmp::abs(fi) < bmp::abs(fp) && bmp::abs(fi) <= bmp::abs(fj))) continue;
    const Real gl = vs[i - 1].derivative.re;
    const Real gr = vs[i + 1].derivative.re;
    if (sgn(gl) * sgn(gr) >= 0) continue;
    Real xc = critical_point(f, Real(xs[i - 1]), Real(xs[i + 1]), ctx);
    FunctionValue vc = f(Complex(xc, Real(0)));
    if (sgn(vc.value.re) != sgn(fi)) {
      add_pair_or_cluster(Real(xs[i - 1]), xc, Real(xs[i + 1]), fp, vc.value.re);
    } else if (bmp::abs(vc.value.re) <= Real(opt.double_zero_rel * maxabs)) {
      out.push_back(make_zero(f, xc, 2, false));
    }
  }
  std::sort(out.begin(), out.end(), [](const Zero& p, const Zero& q) { return p.location.re < q.location.re; });
  // A zero found both by a sign change and as a sample point is kept once.
  std::vector<Zero> uniq;
  for (auto& z : out) {
    if (!uniq.empty() && bmp::abs(uniq.back().location.re - z.location.re) < Real(opt.cluster_floor) &&
        !z.cluster && !uniq.back().cluster && z.multiplicity == uniq.back().multiplicity) {
      continue;
    }
    uniq.push_back(z);
  }
  return uniq;
}

}  // namespace

std::vector<Zero> locate_real_zeros(const AnalyticFunction& f, double a, double b, const PrecisionContext& ctx,
                                    const RealScanOptions& opt) {
  if (!(a < b)) throw Error(ErrorCode::InvalidArgument, "locate_real_zeros needs a < b");
  if (!f.real_on_axis()) throw Error(ErrorCode::InvalidArgument, "locate_real_zeros needs f real on the real axis");
  PrecisionGuard guard(ctx);
  const double step = opt.step > 0 ? opt.step : std::min(0.1, (b - a) / 64);
  return scan_real(f, a, b, step, ctx, opt);
}

// ---------------------------------------------------------------------------
// Zeros in a rectangle

namespace {

struct Locator {
  const AnalyticFunction& f;
  const PrecisionContext& ctx;
  CountOptions opt;
  std::vector<Zero> found;

  // Newton iteration with multiplicity m from z0; nullopt if it leaves `box`.
  std::optional<Complex> newton(Complex z, int m, const Rectangle& box) {
    const Real tol = bmp::pow(Real(10), -Real(ctx.working_digits) / 2);
    for (int it = 0; it < 100; ++it) {
      FunctionValue v = f(z);
      if (v.value.re == 0 && v.value.im == 0) return z;
      if (v.derivative.re == 0 && v.derivative.im == 0) return std::nullopt;
      Complex step = v.value / v.derivative * Real(m);
      z -= step;
      if (!box.contains(z.to_std(), 1e-9 * (1 + box.diameter()))) return std::nullopt;
      if (abs(step) < tol * (1 + abs(z))) {
        // One more step to settle the last digits.
        FunctionValue w = f(z);
        if (!(w.derivative.re == 0 && w.derivative.im == 0)) z -= w.value / w.derivative * Real(m);
        return z;
      }
    }
    return std::nullopt;
  }

  int count_plain(const Rectangle& r) {
    CountOptions o = opt;
    o.max_perturb = 0;
    int subdivisions = 0;
    return winding_subdivided(f, r, o, 0, subdivisions).count;
  }

  void emit(const Complex& z, int m, bool cluster) {
    Zero out;
    out.location = z;
    out.multiplicity = m;
    out.cluster = cluster;
    out.residual = to_double(abs(f(z).value));
    found.push_back(out);
  }

  void search(const Rectangle& r, int count, int depth) {
    if (count <= 0) return;
    const Complex center(Real(0.5 * (r.re_min + r.re_max)), Real(0.5 * (r.im_min + r.im_max)));
    const double scale = 1.0 + std::abs(center.to_std());
    if (count == 1 || r.diameter() < 1e-3 * scale) {
      if (auto z = newton(center, count, r)) {
        bool accept = r.contains(z->to_std());
        if (accept && count > 1) {
          // Multiple zero only if a tiny square around the limit holds all of them.
          const double h = std::max(1e-9 * scale, 1e-3 * r.diameter());
          const auto zc = z->to_std();
          try {
            accept = count_plain({zc.real() - h, zc.real() + h, zc.imag() - h, zc.imag() + h}) == count;
          } catch (const ContourHit&) {
            accept = false;
          }
        }
        if (accept) {
          emit(*z, count, false);
          return;
        }
      }
    }
    if (depth > 48 || r.diameter() < 1e-12 * scale) {
      emit(center, count, true);
      return;
    }
    // Split along the longer side, trying several offsets until the pieces are contour-clean.
    static const double fractions[] = {0.5 + 0.0173, 0.5 - 0.0291, 0.5 + 0.0417, 0.5 - 0.0533, 0.37, 0.63};
    const bool split_re = (r.re_max - r.re_min) >= (r.im_max - r.im_min);
    for (double fr : fractions) {
      Rectangle a = r, b = r;
      if (split_re) {
        const double x = r.re_min + fr * (r.re_max - r.re_min);
        a.re_max = x;
        b.re_min = x;
      } else {
        const double y = r.im_min + fr * (r.im_max - r.im_min);
        a.im_max = y;
        b.im_min = y;
      }
      int ca, cb;
      try {
        ca = count_plain(a);
        cb = count_plain(b);
      } catch (const ContourHit&) {
        continue;
      }
      if (ca + cb != count) continue;
      search(a, ca, depth + 1);
      search(b, cb, depth + 1);
      return;
    }
    emit(center, count, true);
  }
};

}  // namespace

ZeroSet locate_zeros(const AnalyticFunction& f, const Rectangle& rect, const PrecisionContext& ctx,
                     const CountOptions& opt) {
  PrecisionGuard guard(ctx);
  WindingResult w = count_zeros_detailed(f, rect, ctx, opt);
  Locator loc{f, ctx, opt, {}};
  loc.search(w.rect, w.count, 0);
  ZeroSet out;
  out.rect = w.rect;
  out.count = w.count;
  out.zeros = std::move(loc.found);
  std::sort(out.zeros.begin(), out.zeros.end(), [](const Zero& a, const Zero& b) {
    if (a.location.re != b.location.re) return a.location.re < b.location.re;
    return a.location.im < b.location.im;
  });
  return out;
}

// ---------------------------------------------------------------------------
// Reality verdicts

RealityVerdict verify_all_real(const AnalyticFunction& f, const Rectangle& window, const PrecisionContext& ctx,
                               const VerifyOptions& opt) {
  window.validate();
  PrecisionGuard guard(ctx);
  RealityVerdict v;
  v.window = window;
  if (!window.symmetric()) v.warnings.push_back("window not symmetric about the real axis");

  WindingResult w = count_zeros_detailed(f, window, ctx, opt.count);
  v.window_count = w.count;
  if (w.perturbations > 0) v.warnings.push_back("window grown to " + w.rect.describe() + " to avoid a contour zero");

  auto classify_real = [&](const Zero& z) { return std::abs(z.z().imag()) <= real_axis_tolerance(z.z(), ctx); };

  if (f.real_on_axis()) {
    RealScanOptions scan = opt.scan;
    const double len = w.rect.re_max - w.rect.re_min;
    // Keep several samples per expected zero when the window is crowded.
    double step = scan.step > 0 ? scan.step : std::min({0.1, len / 64, len / (4.0 * std::max(w.count, 1))});
    for (int refine = 0;; ++refine) {
      scan.step = step;
      v.real_zeros = locate_real_zeros(f, w.rect.re_min, w.rect.re_max, ctx, scan);
      v.real_count = 0;
      for (const auto& z : v.real_zeros) v.real_count += z.multiplicity;
      if (v.real_count >= v.window_count || refine >= scan.max_refine) break;
      step /= 2;
    }
    if (v.real_count > v.window_count) v.warnings.push_back("more real zeros than the winding count");
    v.all_real = v.real_count == v.window_count;
  }

  bool located = false;
  if (!v.all_real && opt.locate_offenders && f.real_on_axis() && w.rect.symmetric()) {
    // Nonreal zeros pair up under conjugation: search the upper half only.
    const int missing = v.window_count - v.real_count;
    const Rectangle upper{w.rect.re_min, w.rect.re_max, 1e-3 * w.rect.im_max, w.rect.im_max};
    if (missing > 0 && missing % 2 == 0) {
      ZeroSet zs = locate_zeros(f, upper, ctx, opt.count);
      if (2 * zs.count == missing) {
        for (const auto& z : zs.zeros) {
          v.offenders.push_back(z);
          Zero c = z;
          c.location = conj(z.location);
          v.offenders.push_back(c);
        }
        located = true;
      }
    }
  }

  if (!located && ((!v.all_real && opt.locate_offenders) || !f.real_on_axis())) {
    ZeroSet zs = locate_zeros(f, w.rect, ctx, opt.count);
    if (!f.real_on_axis()) {
      v.real_zeros.clear();
      v.real_count = 0;
    }
    for (const auto& z : zs.zeros) {
      if (classify_real(z)) {
        if (!f.real_on_axis()) {
          v.real_zeros.push_back(z);
          v.real_count += z.multiplicity;
        }
      } else {
        v.offenders.push_back(z);
      }
    }
    if (!f.real_on_axis()) v.all_real = v.offenders.empty() && v.real_count == v.window_count;
    if (f.real_on_axis() && v.offenders.empty() && !v.all_real) {
      v.warnings.push_back("winding count exceeds the real count but no nonreal zero was isolated");
    }
  }

  if (!v.offenders.empty()) {
    double worst = -1, margin = std::numeric_limits<double>::infinity();
    for (const auto& z : v.offenders) {
      const double im = std::abs(z.z().imag());
      if (im > worst) {
        worst = im;
        v.worst_offender = z.z();
      }
      margin = std::min(margin, im);
    }
    v.margin = margin;
    // Quadruple symmetry {z, conj z, -z, -conj z} for even functions real on the axis.
    if (f.real_on_axis()) {
      for (const auto& z : v.offenders) {
        const auto c = z.z();
        std::vector<std::complex<double>> images{std::conj(c)};
        if (f.even()) images.push_back(-std::conj(c));
        for (const auto& img : images) {
          if (!w.rect.contains(img, -1e-9)) continue;
          bool match = false;
          for (const auto& o : v.offenders) {
            if (std::abs(o.z() - img) <= 1e-6 * (1 + std::abs(img))) match = true;
          }
          if (!match) v.symmetry_ok = false;
        }
      }
      if (!v.symmetry_ok) v.warnings.push_back("offender set not closed under conjugation/negation");
    }
  } else {
    v.margin = std::max(std::abs(window.im_min), std::abs(window.im_max));
  }
  return v;
}

RealityVerdict verify_all_real(const EvenMeasure& m, double lambda, const Rectangle& window,
                               const PrecisionContext& ctx, const VerifyOptions& opt) {
  PrecisionGuard guard(ctx);
  AnalyticFunction f = AnalyticFunction::from_measure(m, lambda, ctx);
  return verify_all_real(f, window, ctx, opt);
}

}  // namespace dbn

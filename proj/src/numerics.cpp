#include "dbn/numerics.hpp"

#include "dbn/kernels.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace dbn {

namespace bmp = boost::multiprecision;

namespace {

double tol_of(const PrecisionContext& ctx) { return ctx.target_abs_tol; }

Real real_at(double x) { return Real(x); }

// Largest natural exponent representable by mpfr.
double max_log_real() { return static_cast<double>(mpfr_get_emax()) * std::log(2.0) * 0.98; }

}  // namespace

Real eval_phi(const Real& u_in, const PrecisionContext& ctx) {
  ctx.validate();
  PrecisionGuard guard(ctx);
  Real u = bmp::abs(Real(u_in, ctx.working_digits));
  if (!bmp::isfinite(u)) throw Error(ErrorCode::InvalidArgument, "eval_phi: u must be finite");
  if (to_double(u) * 4.5 > max_log_real()) throw Error(ErrorCode::RangeError, "eval_phi: exp(2|u|) out of range");

  const Real pi = pi_real();
  const Real e2 = bmp::exp(2 * u);
  const Real e45 = bmp::exp(u * 9 / 2);
  const Real e25 = bmp::exp(u * 5 / 2);
  const Real stop = real_at(tol_of(ctx) / 10);
  Real sum = 0;
  for (long n = 1;; ++n) {
    Real n2 = Real(n) * n;
    Real term = (4 * pi * pi * n2 * n2 * e45 - 6 * pi * n2 * e25) * bmp::exp(-pi * n2 * e2);
    sum += term;
    if (n >= 3 && bmp::abs(term) < stop) break;
    if (n > 10000000) throw Error(ErrorCode::SizeLimit, "eval_phi: series did not terminate");
  }
  return sum;
}

Real eval_theta(const Real& x_in, const PrecisionContext& ctx) {
  ctx.validate();
  PrecisionGuard guard(ctx);
  Real x(x_in, ctx.working_digits);
  if (!(x > 0)) throw Error(ErrorCode::InvalidArgument, "eval_theta: x must be positive");
  const Real pi = pi_real();
  const Real stop = real_at(tol_of(ctx) / 10);
  Real sum = 1;
  for (long n = 1;; ++n) {
    Real term = 2 * bmp::exp(-pi * Real(n) * n * x);
    sum += term;
    if (n >= 3 && term < stop) break;
    if (n > 10000000) throw Error(ErrorCode::SizeLimit, "eval_theta: x too small for direct summation");
  }
  return sum;
}

Real theta_identity_residual(const Real& x_in, const PrecisionContext& ctx) {
  PrecisionGuard guard(ctx);
  Real x(x_in, ctx.working_digits);
  if (!(x > 0)) throw Error(ErrorCode::InvalidArgument, "theta_identity_residual: x must be positive");
  Real lhs = eval_theta(x, ctx);
  Real rhs = eval_theta(1 / x, ctx) / bmp::sqrt(x);
  return lhs - rhs;
}

// ---------------------------------------------------------------------------
// Riemann xi reference

namespace {

using Rational = bmp::cpp_rational;

std::mutex g_bern_mutex;
std::vector<Rational> g_bern;  // B_0 .. B_n

// B_{2k} as a rational, k >= 1.
Rational bernoulli_even(unsigned two_k) {
  std::lock_guard<std::mutex> lock(g_bern_mutex);
  if (g_bern.empty()) g_bern.push_back(Rational(1));
  while (g_bern.size() <= two_k) {
    const unsigned m = static_cast<unsigned>(g_bern.size());
    // sum_{k=0}^{m} C(m+1, k) B_k = 0
    Rational s = 0;
    bmp::cpp_int binom = 1;  // C(m+1, 0)
    for (unsigned k = 0; k < m; ++k) {
      s += Rational(binom) * g_bern[k];
      binom = binom * (m + 1 - k) / (k + 1);
    }
    g_bern.push_back(-s / Rational(m + 1));
  }
  return g_bern[two_k];
}

Real rational_to_real(const Rational& q) {
  Real num(bmp::numerator(q).str());
  Real den(bmp::denominator(q).str());
  return num / den;
}

}  // namespace

Complex lgamma_complex(const Complex& w_in, unsigned digits) {
  PrecisionGuard guard(digits);
  Complex w(Real(w_in.re, digits), Real(w_in.im, digits));
  const double D = digits;
  const double W = std::max(30.0, D * std::log(10.0) / (2.0 * M_PI) + 8.0);
  // Shift along the real axis until Re w >= W.
  Complex shift_log;
  unsigned shifts = 0;
  while (to_double(w.re) < W) {
    shift_log += log(w);
    w.re += 1;
    if (++shifts > 100000) throw Error(ErrorCode::RangeError, "lgamma: argument too far left");
  }
  const Real pi = pi_real();
  Complex result = (w - Complex(Real(0.5), Real(0))) * log(w) - w + Complex(bmp::log(2 * pi) / 2, Real(0));
  const Real stop = bmp::pow(Real(10), -Real(digits + 2));
  Complex w2 = w * w;
  Complex wpow = w;  // w^{2m-1}
  for (unsigned m = 1; m < 2000; ++m) {
    Real b = rational_to_real(bernoulli_even(2 * m));
    Complex term = Complex(b / (Real(2 * m) * (2 * m - 1)), Real(0)) / wpow;
    result += term;
    if (abs(term) < stop) break;
    wpow *= w2;
  }
  return result - shift_log;
}

Complex zeta_borwein(const Complex& s_in, unsigned digits) {
  PrecisionGuard guard(digits);
  Complex s(Real(s_in.re, digits), Real(s_in.im, digits));
  const double t = std::abs(to_double(s.im));
  const double need = digits + M_PI * t / (2.0 * std::log(10.0)) + 5.0;
  const unsigned n = static_cast<unsigned>(std::ceil(1.31 * need)) + 2;
  // d_k = n sum_{i=0}^{k} (n+i-1)! 4^i / ((n-i)! (2i)!), exact integers.
  std::vector<Real> d(n + 1);
  {
    Rational acc = 0;
    Rational term = Rational(1, n);  // i = 0: (n-1)! / n! = 1/n
    for (unsigned i = 0; i <= n; ++i) {
      if (i > 0) {
        // ratio term_i / term_{i-1} = (n+i-1) * 4 * (n-i+1) / ((2i)(2i-1))
        term *= Rational(bmp::cpp_int(n + i - 1) * 4 * (n - i + 1), bmp::cpp_int(2 * i) * (2 * i - 1));
      }
      acc += term;
      d[i] = rational_to_real(acc * n);
    }
  }
  Complex sum;
  for (unsigned k = 0; k < n; ++k) {
    Complex p = exp(-s * bmp::log(Real(k + 1)));
    Real c = d[k] - d[n];
    if (k % 2) c = -c;
    sum += p * c;
  }
  Complex eta = -sum / d[n];
  Complex two_pow = exp((Complex(Real(1), Real(0)) - s) * ln2_real());
  Complex denom = Complex(Real(1), Real(0)) - two_pow;
  return eta / denom;
}

Complex eval_xi_reference(const Complex& z_in, const PrecisionContext& ctx) {
  ctx.validate();
  PrecisionGuard guard(ctx);
  Complex z(Real(z_in.re, ctx.working_digits), Real(z_in.im, ctx.working_digits));
  if (!bmp::isfinite(z.re) || !bmp::isfinite(z.im)) throw Error(ErrorCode::InvalidArgument, "xi: z must be finite");
  if (to_double(abs(z)) > 1e3) throw Error(ErrorCode::PrecisionLoss, "xi: |z| > 1e3 outside supported range");

  const unsigned internal = ctx.working_digits + 10 +
                            static_cast<unsigned>(std::ceil(M_PI * std::abs(to_double(z.re)) / (2.0 * std::log(10.0))));
  Complex result;
  {
    PrecisionGuard inner(internal);
    Complex zz(Real(z.re, internal), Real(z.im, internal));
    // xi is even: pick the representative with Re s >= 1/2 unless the eta-zeta
    // conversion factor is nearly singular there.
    if (zz.im > 0) zz = -zz;
    auto s_of = [](const Complex& w) { return Complex(Real(0.5) - w.im, w.re); };
    Complex s = s_of(zz);
    Complex conv = Complex(Real(1), Real(0)) - exp((Complex(Real(1), Real(0)) - s) * ln2_real());
    if (abs(conv) < Real(0.1)) {
      zz = -zz;
      s = s_of(zz);
    }
    const Real pi = pi_real();
    // (1/2) s (s-1) Gamma(s/2) = (s-1) Gamma(s/2 + 1)
    Complex lg = lgamma_complex(s / Real(2) + Complex(Real(1), Real(0)), internal);
    Complex zeta = zeta_borwein(s, internal);
    Complex pref = exp(lg - s / Real(2) * bmp::log(pi));
    result = (s - Complex(Real(1), Real(0))) * pref * zeta;
  }
  return Complex(Real(result.re, ctx.working_digits), Real(result.im, ctx.working_digits));
}

// ---------------------------------------------------------------------------
// Density quadrature

DensityTransform::DensityTransform(const EvenMeasure& m, double lambda, const PrecisionContext& ctx)
    : DensityTransform(m, lambda, ctx, Options{}) {}

DensityTransform::DensityTransform(const EvenMeasure& m, double lambda, const PrecisionContext& ctx, Options opt)
    : measure_(m), lambda_(lambda), ctx_(ctx), opt_(opt) {
  ctx_.validate();
  const bool density_kind =
      m.kind == MeasureKind::GaussianConvolution ||
      (m.kind == MeasureKind::NamedDensity && m.density.kind != DensityKind::Case6 && m.density.kind != DensityKind::Case8);
  if (!density_kind) throw Error(ErrorCode::InvalidArgument, "density quadrature needs an even density measure");
  if (!tail_set(m).interior(lambda)) {
    throw Error(ErrorCode::EntirenessViolation, "lambda outside the entireness range of the density");
  }
}

double DensityTransform::cutoff(double y, double tail_tol) const {
  const double log_tol = std::log(tail_tol);
  auto h = [&](double t) {
    return log_density_envelope(measure_, t) + lambda_ * t * t + y * t + std::log(2.0) + std::log1p(t);
  };
  const double w = opt_.root_width;
  for (double t = w;; t += w) {
    if (t > opt_.max_cutoff) {
      throw Error(ErrorCode::TailBoundFailure, "no quadrature cutoff meets the tail tolerance (lambda near the boundary?)");
    }
    const double e = 1e-4 * std::max(1.0, t);
    const double d = (h(t + e) - h(t - e)) / (2 * e);
    const double ht = h(t);
    if (ht == -std::numeric_limits<double>::infinity()) return t;
    if (!(d < 0)) continue;
    if (ht - std::log(-d) < log_tol) return t;
  }
}

const std::vector<Real>& DensityTransform::samples(long root, unsigned level, long idx, const Real& a,
                                                   const Real& h) const {
  const unsigned digits = static_cast<unsigned>(Real::default_precision());
  auto key = std::make_pair(Key{root, level, idx}, static_cast<double>(digits) + 1e6 * to_double(h));
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
  }
  auto rule = cc_rule(opt_.rule_n, digits);
  std::vector<Real> g;
  g.reserve(rule->nodes.size());
  const Real half = h / 2;
  const Real lam(lambda_);
  PrecisionContext inner{digits, std::max(ctx_.target_abs_tol, std::pow(10.0, -static_cast<double>(digits) + 2))};
  for (const auto& x : rule->nodes) {
    Real t = a + half * (x + 1);
    g.push_back(bmp::exp(lam * t * t) * density_at(measure_, t, inner));
  }
  std::lock_guard<std::mutex> lock(mutex_);
  auto res = cache_.emplace(key, std::move(g));
  return res.first->second;
}

TransformEval DensityTransform::eval_impl(const Complex& z_in, double width) const {
  const double tol = ctx_.target_abs_tol;
  const double y = std::abs(to_double(z_in.im));
  const double T_raw = cutoff(y, tol / 4);

  // Extra digits cover the integrand's peak magnitude so the absolute budget holds.
  double peak = 0;
  for (double t = 0; t <= T_raw; t += width / 4) {
    peak = std::max(peak, log_density_envelope(measure_, t) + lambda_ * t * t + y * t + std::log1p(t));
  }
  unsigned extra = static_cast<unsigned>(std::max(0.0, std::ceil(peak / std::log(10.0))));
  extra = (extra + 9) / 10 * 10;
  const unsigned digits = ctx_.working_digits + extra;

  TransformEval out;
  {
    PrecisionGuard guard(digits);
    Complex z(Real(z_in.re, digits), Real(z_in.im, digits));
    auto rule = cc_rule(opt_.rule_n, digits);
    const long roots = static_cast<long>(std::ceil(T_raw / width - 1e-12));
    const double T = roots * width;
    const double eps = std::pow(10.0, -static_cast<double>(digits) + 1);

    Complex F, D;
    double err = 0.0;
    double rounding = 0.0;

    struct Panel {
      long root;
      unsigned level;
      long idx;
      double ptol;
    };
    for (long r = 0; r < roots; ++r) {
      std::vector<Panel> stack{{r, 0, 0, 0.5 * tol / roots}};
      while (!stack.empty()) {
        Panel p = stack.back();
        stack.pop_back();
        const double hw = width / std::ldexp(1.0, static_cast<int>(p.level));
        Real h = Real(width) / bmp::pow(Real(2), p.level);
        Real a = Real(width) * r + h * p.idx;
        const auto& g = samples(p.root, p.level, p.idx, a, h);
        const Real half = h / 2;
        std::vector<Real> t(rule->nodes.size());
        for (std::size_t k = 0; k < t.size(); ++k) t[k] = a + half * (rule->nodes[k] + 1);
        kernels::NodeSums ns =
            kernels::cosine_node_sums(t, g, rule->weights, rule->coarse_weights, z, kernels::default_exec());
        Complex f_hi = ns.f_hi * half, f_lo = ns.f_lo * half, d_hi = ns.d_hi * half, d_lo = ns.d_lo * half;
        const double mag = ns.magnitude;
        const double e = 2.0 * std::max(to_double(abs(f_hi - f_lo)), to_double(abs(d_hi - d_lo)));
        if (e <= p.ptol || p.level >= opt_.max_level) {
          if (e > p.ptol) {
            throw Error(ErrorCode::QuadratureNonConvergence, "panel bisection limit reached near t=" +
                                                                 std::to_string(to_double(a)));
          }
          F += f_hi;
          D += d_hi;
          err += e;
          rounding += eps * mag * hw / 2 * 2.0;
        } else {
          stack.push_back({p.root, p.level + 1, 2 * p.idx + 1, p.ptol / 2});
          stack.push_back({p.root, p.level + 1, 2 * p.idx, p.ptol / 2});
        }
      }
    }
    F *= Real(2);
    D *= Real(2);
    // Tail bound of the value and derivative integrands at T.
    auto h = [&](double t) {
      return log_density_envelope(measure_, t) + lambda_ * t * t + y * t + std::log(2.0) + std::log1p(t);
    };
    const double e = 1e-4 * std::max(1.0, T);
    const double dh = (h(T + e) - h(T - e)) / (2 * e);
    const double tail = (h(T) == -std::numeric_limits<double>::infinity()) ? 0.0 : std::exp(h(T)) / std::abs(dh);

    PrecisionGuard back(ctx_.working_digits);
    out.value = Complex(Real(F.re, ctx_.working_digits), Real(F.im, ctx_.working_digits));
    out.derivative = Complex(Real(D.re, ctx_.working_digits), Real(D.im, ctx_.working_digits));
    out.abs_error_estimate = err + tail + rounding;
  }
  out.lambda = lambda_;
  out.z = z_in;
  out.digits = digits;
  return out;
}

TransformEval DensityTransform::eval(const Complex& z) const { return eval_impl(z, opt_.root_width); }

TransformEval DensityTransform::eval_refined(const Complex& z) const { return eval_impl(z, opt_.root_width / 2); }

TransformEval eval_H_density(const EvenMeasure& m, double lambda, const Complex& z, const PrecisionContext& ctx) {
  PrecisionGuard guard(ctx);
  DensityTransform dt(m, lambda, ctx);
  return dt.eval(z);
}

}  // namespace dbn

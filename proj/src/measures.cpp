#include "dbn/measures.hpp"

#include "dbn/numerics.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace dbn {

namespace bmp = boost::multiprecision;

const char* to_string(MeasureKind k) {
  switch (k) {
    case MeasureKind::SymmetricAtoms: return "SymmetricAtoms";
    case MeasureKind::NamedDensity: return "NamedDensity";
    case MeasureKind::GaussianConvolution: return "GaussianConvolution";
    case MeasureKind::MultipliedMeasure: return "MultipliedMeasure";
  }
  return "?";
}

const char* to_string(DensityKind k) {
  switch (k) {
    case DensityKind::RiemannPhi: return "RiemannPhi";
    case DensityKind::Gaussian: return "Gaussian";
    case DensityKind::ExpPower: return "ExpPower";
    case DensityKind::CoshExp: return "CoshExp";
    case DensityKind::DBNClass: return "DBNClass";
    case DensityKind::PolyaQuartic: return "PolyaQuartic";
    case DensityKind::AbsExpGaussian: return "AbsExpGaussian";
    case DensityKind::PolyDecayGaussian: return "PolyDecayGaussian";
    case DensityKind::SexticExp: return "SexticExp";
    case DensityKind::Case6: return "Case6";
    case DensityKind::Case8: return "Case8";
  }
  return "?";
}

bool TailSet::contains(double b) const {
  switch (shape) {
    case Shape::AllReals: return true;
    case Shape::OpenUpTo: return b < b0;
    case Shape::ClosedUpTo: return b <= b0;
  }
  return false;
}

bool TailSet::interior(double b) const { return shape == Shape::AllReals || b < b0; }

TailSet TailSet::shifted(double lambda) const {
  if (shape == Shape::AllReals) return *this;
  return {shape, b0 - lambda};
}

std::string TailSet::describe() const {
  std::ostringstream os;
  os.precision(17);
  switch (shape) {
    case Shape::AllReals: return "(-inf, inf)";
    case Shape::OpenUpTo: os << "(-inf, " << b0 << ")"; break;
    case Shape::ClosedUpTo: os << "(-inf, " << b0 << "]"; break;
  }
  return os.str();
}

EvenMeasure EvenMeasure::symmetric_atoms(std::vector<Atom> atoms) {
  EvenMeasure m;
  m.kind = MeasureKind::SymmetricAtoms;
  m.atoms = std::move(atoms);
  m.validate();
  return m;
}

EvenMeasure EvenMeasure::named(DensitySpec spec) {
  EvenMeasure m;
  m.kind = MeasureKind::NamedDensity;
  m.density = std::move(spec);
  m.validate();
  return m;
}

EvenMeasure EvenMeasure::gaussian(double b0, double K) {
  DensitySpec s;
  s.kind = DensityKind::Gaussian;
  s.b0 = b0;
  s.K = K;
  return named(s);
}

EvenMeasure EvenMeasure::riemann_phi() {
  DensitySpec s;
  s.kind = DensityKind::RiemannPhi;
  return named(s);
}

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::InvalidArgument, what);
}

void validate_atoms(const std::vector<Atom>& atoms) {
  require(!atoms.empty(), "atomic measure needs at least one atom");
  for (const auto& a : atoms) {
    require(std::isfinite(a.t) && a.t >= 0, "atom positions must be finite and >= 0");
    require(std::isfinite(a.w) && a.w > 0, "atom weights must be positive");
  }
}

}  // namespace

void EvenMeasure::validate() const {
  switch (kind) {
    case MeasureKind::SymmetricAtoms: validate_atoms(atoms); break;
    case MeasureKind::GaussianConvolution:
      validate_atoms(atoms);
      require(b0 > 0 && std::isfinite(b0), "convolution b0 must be positive");
      break;
    case MeasureKind::MultipliedMeasure:
      require(base != nullptr, "multiplied measure needs a base");
      require(std::isfinite(lambda), "multiplier lambda must be finite");
      base->validate();
      break;
    case MeasureKind::NamedDensity: {
      const auto& d = density;
      require(d.K > 0 && std::isfinite(d.K), "density scale K must be positive");
      switch (d.kind) {
        case DensityKind::RiemannPhi: break;
        case DensityKind::Gaussian: require(d.b0 > 0, "Gaussian b0 must be positive"); break;
        case DensityKind::ExpPower: require(d.q >= 1, "ExpPower q must be >= 1"); break;
        case DensityKind::CoshExp: require(d.a > 0, "CoshExp a must be positive"); break;
        case DensityKind::DBNClass: {
          require(d.m >= 0, "DBNClass m must be >= 0");
          require(d.alpha >= 0, "DBNClass alpha must be >= 0");
          double s = 0;
          for (double a : d.a_j) {
            require(a > 0, "DBNClass a_j must be positive");
            s += 1.0 / (a * a);
          }
          if (d.alpha == 0) require(d.beta + s > 0, "DBNClass with alpha = 0 needs beta + sum 1/a_j^2 > 0");
          break;
        }
        case DensityKind::PolyaQuartic:
          require(d.a > 0 && d.q >= 1, "PolyaQuartic needs a > 0 and q >= 1");
          break;
        case DensityKind::AbsExpGaussian: require(d.a > 0 && d.lambda > 0, "AbsExpGaussian needs a, lambda > 0"); break;
        case DensityKind::PolyDecayGaussian:
          require(d.theta > 0.5 && d.lambda > 0, "PolyDecayGaussian needs theta > 1/2 and lambda > 0");
          break;
        case DensityKind::SexticExp: require(d.a > 0, "SexticExp needs a > 0"); break;
        case DensityKind::Case6: break;
        case DensityKind::Case8: break;
      }
      break;
    }
  }
}

bool EvenMeasure::is_even() const {
  if (kind == MeasureKind::NamedDensity) return density.kind != DensityKind::Case6;
  if (kind == MeasureKind::MultipliedMeasure) return base->is_even();
  return true;
}

bool EvenMeasure::is_atomic() const {
  if (kind == MeasureKind::SymmetricAtoms) return true;
  if (kind == MeasureKind::MultipliedMeasure) return base->is_atomic();
  return false;
}

TailSet tail_set(const EvenMeasure& m) {
  switch (m.kind) {
    case MeasureKind::SymmetricAtoms: return TailSet::all_reals();
    case MeasureKind::GaussianConvolution: return TailSet::open_up_to(m.b0);
    case MeasureKind::MultipliedMeasure: return tail_set(*m.base).shifted(m.lambda);
    case MeasureKind::NamedDensity: {
      const auto& d = m.density;
      switch (d.kind) {
        case DensityKind::RiemannPhi: return TailSet::all_reals();
        case DensityKind::Gaussian: return TailSet::open_up_to(d.b0);
        case DensityKind::ExpPower: return d.q >= 2 ? TailSet::all_reals() : TailSet::open_up_to(1.0);
        case DensityKind::CoshExp: return TailSet::all_reals();
        case DensityKind::DBNClass: {
          if (d.alpha > 0) return TailSet::all_reals();
          double s = d.beta;
          for (double a : d.a_j) s += 1.0 / (a * a);
          return TailSet::open_up_to(s);
        }
        case DensityKind::PolyaQuartic: return TailSet::all_reals();
        case DensityKind::SexticExp: return TailSet::all_reals();
        case DensityKind::AbsExpGaussian: return TailSet::open_up_to(d.lambda);
        case DensityKind::PolyDecayGaussian: return TailSet::open_up_to(d.lambda);
        case DensityKind::Case6: return TailSet::open_up_to(1.0);
        case DensityKind::Case8: return TailSet::closed_up_to(0.0);
      }
      break;
    }
  }
  throw Error(ErrorCode::UnknownKind, "tail_set: unknown measure kind");
}

bool entire_at(const EvenMeasure& m, double lambda) { return tail_set(m).contains(lambda); }

EvenMeasure apply_gaussian_multiplier(const EvenMeasure& m, double lambda, bool normalize) {
  m.validate();
  const TailSet tail = tail_set(m);
  if (normalize && !tail.contains(lambda)) {
    throw Error(ErrorCode::EntirenessViolation, "multiplier outside the entireness range: lambda=" +
                                                    std::to_string(lambda) + ", tail " + tail.describe());
  }
  if (m.kind == MeasureKind::SymmetricAtoms) {
    EvenMeasure out = m;
    double total = 0;
    for (auto& a : out.atoms) {
      a.w *= std::exp(lambda * a.t * a.t);
      total += a.w;
    }
    if (normalize) {
      for (auto& a : out.atoms) a.w /= total;
    }
    return out;
  }
  if (m.kind == MeasureKind::NamedDensity && m.density.kind == DensityKind::Gaussian && lambda < m.density.b0) {
    DensitySpec s = m.density;
    s.b0 = m.density.b0 - lambda;
    if (normalize) s.K = std::sqrt(s.b0 / M_PI);
    return EvenMeasure::named(s);
  }
  EvenMeasure out;
  out.kind = MeasureKind::MultipliedMeasure;
  out.base = std::make_shared<const EvenMeasure>(m);
  out.lambda = lambda;
  out.normalized = normalize;
  return out;
}

EvenMeasure convolve_gaussian(const EvenMeasure& base, double b0) {
  if (base.kind != MeasureKind::SymmetricAtoms) {
    throw Error(ErrorCode::InvalidArgument, "convolve_gaussian: base must be a finite atomic measure");
  }
  base.validate();
  if (!(b0 > 0)) throw Error(ErrorCode::InvalidArgument, "convolve_gaussian: b0 must be positive");
  if (base.atoms.size() == 1 && base.atoms[0].t == 0) {
    return EvenMeasure::gaussian(b0, base.atoms[0].w * std::sqrt(b0 / M_PI));
  }
  EvenMeasure out;
  out.kind = MeasureKind::GaussianConvolution;
  out.atoms = base.atoms;
  out.b0 = b0;
  out.validate();
  return out;
}

// ---------------------------------------------------------------------------
// Densities

Real density_at(const EvenMeasure& m, const Real& t_in, const PrecisionContext& ctx) {
  const Real t = bmp::abs(t_in);
  switch (m.kind) {
    case MeasureKind::SymmetricAtoms:
      throw Error(ErrorCode::InvalidArgument, "density_at: atomic measure has no density");
    case MeasureKind::GaussianConvolution: {
      const Real b0(m.b0);
      const Real c = bmp::sqrt(b0 / pi_real());
      Real s = 0;
      for (const auto& a : m.atoms) {
        const Real tj(a.t);
        s += Real(a.w) * c * (bmp::exp(-b0 * (t - tj) * (t - tj)) + bmp::exp(-b0 * (t + tj) * (t + tj))) / 2;
      }
      return s;
    }
    case MeasureKind::MultipliedMeasure: {
      Real v = bmp::exp(Real(m.lambda) * t * t) * density_at(*m.base, t, ctx);
      if (m.normalized) v /= total_mass(*m.base, m.lambda, ctx);
      return v;
    }
    case MeasureKind::NamedDensity: break;
  }
  const auto& d = m.density;
  const Real K(d.K);
  const Real t2 = t * t;
  switch (d.kind) {
    case DensityKind::RiemannPhi: return K * eval_phi(t, ctx);
    case DensityKind::Gaussian: return K * bmp::exp(-Real(d.b0) * t2);
    case DensityKind::ExpPower: return K * bmp::exp(-bmp::pow(t2, d.q));
    case DensityKind::CoshExp: return K * bmp::exp(-Real(d.a) * bmp::cosh(t));
    case DensityKind::DBNClass: {
      Real e = -Real(d.alpha) * t2 * t2 - Real(d.beta) * t2;
      Real prod = 1;
      for (double a : d.a_j) {
        Real u = t2 / (Real(a) * a);
        prod *= 1 + u;
        e -= u;
      }
      return K * bmp::pow(t2, d.m) * prod * bmp::exp(e);
    }
    case DensityKind::PolyaQuartic: {
      Real p = bmp::pow(t2, d.q);
      return K * bmp::exp(-Real(d.a) * p * p + Real(d.b) * p + Real(d.c) * t2);
    }
    case DensityKind::AbsExpGaussian: return K * bmp::exp(-Real(d.a) * t - Real(d.lambda) * t2);
    case DensityKind::PolyDecayGaussian:
      return K * bmp::pow(1 + t2, -Real(d.theta)) * bmp::exp(-Real(d.lambda) * t2);
    case DensityKind::SexticExp:
      return K * bmp::exp(-Real(d.a) * t2 * t2 * t2 - Real(d.b) * t2 * t2 - Real(d.c) * t2);
    case DensityKind::Case6: return K * bmp::exp(-t_in * t_in) * (1 + t_in);
    case DensityKind::Case8: throw Error(ErrorCode::InvalidArgument, "density_at: Case8 measure is discrete");
  }
  throw Error(ErrorCode::UnknownKind, "density_at: unknown density kind");
}

double log_density_envelope(const EvenMeasure& m, double t) {
  t = std::abs(t);
  const double ninf = -std::numeric_limits<double>::infinity();
  switch (m.kind) {
    case MeasureKind::SymmetricAtoms: return ninf;
    case MeasureKind::GaussianConvolution: {
      double best = ninf;
      double acc = 0;
      std::vector<double> terms;
      for (const auto& a : m.atoms) {
        const double d = t - a.t;
        terms.push_back(std::log(a.w) + 0.5 * std::log(m.b0 / M_PI) - m.b0 * d * d);
        best = std::max(best, terms.back());
      }
      for (double x : terms) acc += std::exp(x - best);
      return best + std::log(acc);
    }
    case MeasureKind::MultipliedMeasure: return m.lambda * t * t + log_density_envelope(*m.base, t);
    case MeasureKind::NamedDensity: break;
  }
  const auto& d = m.density;
  const double lk = std::log(d.K);
  const double t2 = t * t;
  switch (d.kind) {
    case DensityKind::RiemannPhi:
      // n = 1 term dominates; the factor 1.01 bounds the rest for t >= 0.
      return lk + std::log(4 * M_PI * M_PI * 1.01) + 4.5 * t - M_PI * std::exp(2 * t);
    case DensityKind::Gaussian: return lk - d.b0 * t2;
    case DensityKind::ExpPower: return lk - std::pow(t2, d.q);
    case DensityKind::CoshExp: return lk - d.a * std::cosh(t);
    case DensityKind::DBNClass: {
      double e = lk - d.alpha * t2 * t2 - d.beta * t2 + (d.m > 0 ? 2.0 * d.m * std::log(t) : 0.0);
      for (double a : d.a_j) {
        const double u = t2 / (a * a);
        e += std::log1p(u) - u;
      }
      return e;
    }
    case DensityKind::PolyaQuartic: {
      const double p = std::pow(t2, d.q);
      return lk - d.a * p * p + d.b * p + d.c * t2;
    }
    case DensityKind::AbsExpGaussian: return lk - d.a * t - d.lambda * t2;
    case DensityKind::PolyDecayGaussian: return lk - d.theta * std::log1p(t2) - d.lambda * t2;
    case DensityKind::SexticExp: return lk - d.a * t2 * t2 * t2 - d.b * t2 * t2 - d.c * t2;
    case DensityKind::Case6: return lk - t2 + std::log1p(t);
    case DensityKind::Case8: return ninf;
  }
  return ninf;
}

bool has_closed_form(const EvenMeasure& m) {
  switch (m.kind) {
    case MeasureKind::SymmetricAtoms:
    case MeasureKind::GaussianConvolution: return true;
    case MeasureKind::MultipliedMeasure: return has_closed_form(*m.base);
    case MeasureKind::NamedDensity:
      return m.density.kind == DensityKind::Gaussian || m.density.kind == DensityKind::Case6 ||
             m.density.kind == DensityKind::Case8;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Case 8

namespace {

// P(X = k) for the Case-8 law, k >= 0: (1 + k^2)/2 * e^{-1} I_k(1).
Real case8_pmf(long k) {
  Real ik = 0;
  Real term = bmp::pow(Real(0.5), k);
  for (long j = 1; j <= k; ++j) term /= j;
  const Real eps = bmp::pow(Real(10), -Real(Real::default_precision() + 5));
  for (long m = 0; m < 100000; ++m) {
    ik += term;
    term *= Real(0.25) / (Real(m + 1) * (m + 1 + k));
    if (term < eps * ik) break;
  }
  return Real(1 + k * k) / 2 * bmp::exp(Real(-1)) * ik;
}

}  // namespace

void case8_laplace(const Complex& w, Complex& value, Complex& derivative) {
  const Complex ch = cos(mul_i(w));  // cosh w
  Complex sh = -mul_i(sin(mul_i(w)));  // sinh w = -i sin(i w)
  Complex e = exp(ch - Complex(Real(1), Real(0)));
  Complex one(Real(1), Real(0));
  value = ch * (one + ch) * e / Real(2);
  derivative = sh * (one + ch * Real(3) + ch * ch) * e / Real(2);
}

// ---------------------------------------------------------------------------
// Transform evaluation

HEvaluator::HEvaluator(const EvenMeasure& m, double lambda, const PrecisionContext& ctx)
    : lambda_(lambda), outer_lambda_(lambda), ctx_(ctx), divisor_(1) {
  ctx_.validate();
  PrecisionGuard guard(ctx_);
  m.validate();
  if (!std::isfinite(lambda)) throw Error(ErrorCode::InvalidArgument, "lambda must be finite");
  if (!entire_at(m, lambda)) {
    throw Error(ErrorCode::EntirenessViolation,
                "lambda=" + std::to_string(lambda) + " outside the tail set " + tail_set(m).describe());
  }
  const EvenMeasure* cur = &m;
  divisor_ = 1;
  while (cur->kind == MeasureKind::MultipliedMeasure) {
    if (cur->normalized) divisor_ *= total_mass(*cur->base, cur->lambda, ctx_);
    lambda_ += cur->lambda;
    cur = cur->base.get();
  }
  leaf_ = *cur;
  if (!has_closed_form(leaf_)) dt_ = std::make_shared<DensityTransform>(leaf_, lambda_, ctx_);
}

TransformEval HEvaluator::eval_closed(const Complex& z) const {
  TransformEval out;
  out.closed_form = true;
  const Real lam(lambda_);
  const Complex one(Real(1), Real(0));
  const double eps = std::pow(10.0, -static_cast<double>(ctx_.working_digits) + 3);
  double scale = 0;
  const double y = std::abs(to_double(z.im));

  if (leaf_.kind == MeasureKind::SymmetricAtoms) {
    for (const auto& a : leaf_.atoms) {
      const Real t(a.t);
      const Real w = Real(a.w) * bmp::exp(lam * t * t);
      if (a.t == 0) {
        out.value += Complex(w, Real(0));
      } else {
        Complex s, c;
        sincos(z * t, s, c);
        out.value += c * w;
        out.derivative -= s * (w * t);
      }
      scale += to_double(w) * std::cosh(y * a.t) * (1 + a.t);
    }
  } else if (leaf_.kind == MeasureKind::GaussianConvolution) {
    const Real b0(leaf_.b0);
    const Real c = b0 - lam;
    const Complex g = exp(-(z * z) / (c * 4));
    for (const auto& a : leaf_.atoms) {
      const Real t(a.t);
      const Real amp = Real(a.w) * bmp::sqrt(b0 / c) * bmp::exp(b0 * lam * t * t / c);
      const Real k = b0 * t / c;
      Complex s, co;
      sincos(z * k, s, co);
      out.value += co * g * amp;
      out.derivative += (-(z / (c * 2)) * co - s * k) * g * amp;
      scale += to_double(amp) * std::cosh(y * to_double(k));
    }
    scale *= std::max(1.0, to_double(abs(g)));
  } else {
    const auto& d = leaf_.density;
    switch (d.kind) {
      case DensityKind::Gaussian: {
        const Real c = Real(d.b0) - lam;
        const Complex g = exp(-(z * z) / (c * 4)) * (Real(d.K) * bmp::sqrt(pi_real() / c));
        out.value = g;
        out.derivative = -(z / (c * 2)) * g;
        scale = to_double(abs(g));
        break;
      }
      case DensityKind::Case6: {
        const Real alpha = 1 - lam;
        const Complex g = exp(-(z * z) / (alpha * 4)) * (Real(d.K) * bmp::sqrt(pi_real() / alpha));
        const Complex lin = one + mul_i(z) / (alpha * 2);
        out.value = lin * g;
        out.derivative = (Complex(Real(0), 1 / (alpha * 2)) - lin * (z / (alpha * 2))) * g;
        scale = to_double(abs(g)) * (1 + to_double(abs(z)));
        break;
      }
      case DensityKind::Case8: {
        if (lambda_ == 0.0) {
          Complex s, c;
          sincos(z, s, c);
          const Complex e = exp(c - one);
          out.value = c * (one + c) * e / Real(2);
          out.derivative = -(s * (one + c * Real(3) + c * c) * e / Real(2));
          scale = to_double(abs(out.value)) + 1.0;
        } else {
          // lambda < 0: truncated discrete sum over the integer support.
          const double stop = ctx_.target_abs_tol / 10;
          for (long k = 0;; ++k) {
            const Real p = case8_pmf(k) * bmp::exp(lam * Real(k) * k) * (k == 0 ? 1 : 2);
            const double mag = to_double(p) * std::cosh(y * k) * (1 + k);
            if (k == 0) {
              out.value += Complex(p, Real(0));
            } else {
              Complex s, c;
              sincos(z * Real(k), s, c);
              out.value += c * p;
              out.derivative -= s * (p * k);
            }
            scale += mag;
            if (k > 2 && mag < stop) break;
            if (k > 100000) throw Error(ErrorCode::SizeLimit, "Case8 series did not terminate");
          }
          out.abs_error_estimate += ctx_.target_abs_tol / 5;
        }
        out.value *= Real(d.K);
        out.derivative *= Real(d.K);
        break;
      }
      default: throw Error(ErrorCode::InvalidArgument, "no closed form for this density");
    }
  }
  out.abs_error_estimate += eps * scale;
  return out;
}

TransformEval HEvaluator::eval(const Complex& z) const {
  PrecisionGuard guard(ctx_);
  TransformEval out = dt_ ? dt_->eval(z) : eval_closed(z);
  if (divisor_ != 1) {
    out.value /= divisor_;
    out.derivative /= divisor_;
    out.abs_error_estimate /= to_double(divisor_);
  }
  out.lambda = outer_lambda_;
  out.z = z;
  out.digits = ctx_.working_digits;
  out.closed_form = dt_ == nullptr;
  return out;
}

TransformEval eval_H(const EvenMeasure& m, double lambda, const Complex& z, const PrecisionContext& ctx) {
  HEvaluator h(m, lambda, ctx);
  return h.eval(z);
}

Real total_mass(const EvenMeasure& m, double lambda, const PrecisionContext& ctx) {
  PrecisionGuard guard(ctx);
  return eval_H(m, lambda, Complex(Real(0), Real(0)), ctx).value.re;
}

Real second_moment(const EvenMeasure& m, const PrecisionContext& ctx) {
  PrecisionGuard guard(ctx);
  if (m.kind == MeasureKind::SymmetricAtoms) {
    Real num = 0, den = 0;
    for (const auto& a : m.atoms) {
      num += Real(a.w) * Real(a.t) * a.t;
      den += Real(a.w);
    }
    return num / den;
  }
  if (m.kind == MeasureKind::NamedDensity && m.density.kind == DensityKind::Gaussian) {
    return 1 / (2 * Real(m.density.b0));
  }
  // E[X^2] = -H''(0)/H(0), with H''(0) from H'(i eps)/(i eps).
  HEvaluator h(m, 0.0, ctx);
  const Real e("1e-8");
  TransformEval d = h.eval(Complex(Real(0), e));
  Real h0 = h.eval(Complex(Real(0), Real(0))).value.re;
  // H'(i e) = -2 i int t sinh(e t) g  =>  H'(ie)/(ie) ~ -int t^2 d rho
  Complex q = d.derivative / Complex(Real(0), e);
  return -q.re / h0;
}

}  // namespace dbn

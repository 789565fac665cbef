#include "dbn/leeyang.hpp"

#include "dbn/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

namespace dbn {

const char* to_string(SiteKind k) {
  switch (k) {
    case SiteKind::PlusMinusOne: return "PlusMinusOne";
    case SiteKind::Phi4: return "Phi4";
    case SiteKind::Phi6: return "Phi6";
  }
  return "?";
}

const char* to_string(LeeYangRoute r) {
  switch (r) {
    case LeeYangRoute::Polynomial: return "polynomial";
    case LeeYangRoute::AtomicWindow: return "atomic-window";
    case LeeYangRoute::SingleSiteQuadrature: return "single-site-quadrature";
  }
  return "?";
}

bool SpinSystem::unit_fields() const {
  return std::all_of(field_weights.begin(), field_weights.end(), [](double l) { return l == 1.0; });
}

bool SpinSystem::integer_fields() const {
  return std::all_of(field_weights.begin(), field_weights.end(), [](double l) { return l == std::floor(l); });
}

void SpinSystem::validate() const {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "spin system needs n >= 1");
  if (n > kMaxSpins) {
    throw Error(ErrorCode::SizeLimit, "spin system n=" + std::to_string(n) + " exceeds " + std::to_string(kMaxSpins));
  }
  if (J.size() != static_cast<std::size_t>(n) * n) throw Error(ErrorCode::InvalidArgument, "J must be n x n");
  if (!field_weights.empty() && field_weights.size() != static_cast<std::size_t>(n)) {
    throw Error(ErrorCode::InvalidArgument, "field_weights must have n entries");
  }
  if (!(beta >= 0) || !std::isfinite(beta)) throw Error(ErrorCode::InvalidArgument, "beta must be non-negative");
  for (int i = 0; i < n; ++i) {
    if (coupling(i, i) != 0) throw Error(ErrorCode::InvalidArgument, "J must have zero diagonal");
    if (!(field(i) >= 0) || !std::isfinite(field(i))) {
      throw Error(ErrorCode::InvalidArgument, "field weights must be non-negative");
    }
    for (int j = 0; j < n; ++j) {
      if (!std::isfinite(coupling(i, j))) throw Error(ErrorCode::InvalidArgument, "J entries must be finite");
      if (coupling(i, j) != coupling(j, i)) throw Error(ErrorCode::InvalidArgument, "J must be symmetric");
      if (coupling(i, j) < 0 && !search_mode) {
        throw Error(ErrorCode::InvalidArgument, "negative coupling J_" + std::to_string(i) + std::to_string(j) +
                                                    " requires search mode");
      }
    }
  }
  if (site.kind != SiteKind::PlusMinusOne) {
    if (n != 1) throw Error(ErrorCode::InvalidArgument, "continuous site measures are supported for n = 1 only");
    if (!(site.a > 0)) throw Error(ErrorCode::InvalidArgument, "site measure needs a > 0");
  }
}

namespace {

double energy_shift(const SpinSystem& s) {
  double e = 0;
  for (double j : s.J) e += std::abs(j);
  return s.beta * e;
}

}  // namespace

PartitionPolynomial build_partition_polynomial(const SpinSystem& s) {
  s.validate();
  if (s.site.kind != SiteKind::PlusMinusOne || !s.unit_fields()) {
    throw Error(ErrorCode::InvalidArgument, "partition polynomial needs PlusMinusOne sites with unit fields");
  }
  const double shift = energy_shift(s);
  std::vector<double> w = kernels::ising_magnetization_weights(s.n, s.J, s.beta, shift, kernels::default_exec());
  PartitionPolynomial p;
  p.n = s.n;
  p.coefficients.assign(w.size(), 0.0);
  double Z = 0;
  for (double v : w) Z += v;
  p.log_Z = std::log(Z) + shift;
  for (int m = -s.n; m <= s.n; ++m) {
    p.coefficients[m + s.n] = 0.5 * (w[m + s.n] + w[s.n - m]) / Z;
  }
  return p;
}

std::complex<double> eval_partition_polynomial(const PartitionPolynomial& p, std::complex<double> z) {
  std::complex<double> f = 0;
  for (int m = -p.n; m <= p.n; ++m) f += p.coefficient(m) * std::exp(std::complex<double>(0, m) * z);
  return f;
}

std::complex<double> eval_partition_direct(const SpinSystem& s, std::complex<double> z) {
  s.validate();
  if (s.site.kind != SiteKind::PlusMinusOne) throw Error(ErrorCode::InvalidArgument, "direct sum needs spin sites");
  const double shift = energy_shift(s);
  std::complex<double> f = 0;
  double Z = 0;
  std::vector<int> x(s.n);
  for (std::uint64_t c = 0; c < (std::uint64_t{1} << s.n); ++c) {
    double t = 0;
    for (int i = 0; i < s.n; ++i) {
      x[i] = ((c >> i) & 1u) ? 1 : -1;
      t += s.field(i) * x[i];
    }
    double e = 0;
    for (int i = 0; i < s.n; ++i) {
      for (int j = 0; j < s.n; ++j) {
        if (i != j) e += s.coupling(i, j) * x[i] * x[j];
      }
    }
    const double w = std::exp(s.beta * e - shift);
    Z += w;
    f += w * std::exp(std::complex<double>(0, 1) * z * t);
  }
  return f / Z;
}

EvenMeasure spin_sum_measure(const SpinSystem& s) {
  s.validate();
  if (s.site.kind != SiteKind::PlusMinusOne) throw Error(ErrorCode::InvalidArgument, "spin-sum measure needs spin sites");
  const double shift = energy_shift(s);
  std::map<double, double> by_abs;
  double Z = 0;
  std::vector<int> x(s.n);
  for (std::uint64_t c = 0; c < (std::uint64_t{1} << s.n); ++c) {
    double t = 0, e = 0;
    for (int i = 0; i < s.n; ++i) {
      x[i] = ((c >> i) & 1u) ? 1 : -1;
      t += s.field(i) * x[i];
    }
    for (int i = 0; i < s.n; ++i) {
      for (int j = 0; j < s.n; ++j) {
        if (i != j) e += s.coupling(i, j) * x[i] * x[j];
      }
    }
    const double w = std::exp(s.beta * e - shift);
    Z += w;
    by_abs[std::abs(t)] += w;
  }
  // Merge positions equal up to rounding of the field sums.
  std::vector<Atom> atoms;
  for (const auto& [t, w] : by_abs) {
    if (!atoms.empty() && std::abs(t - atoms.back().t) <= 1e-12 * (1 + t)) {
      atoms.back().w += w / Z;
    } else {
      atoms.push_back({t, w / Z});
    }
  }
  return EvenMeasure::symmetric_atoms(atoms);
}

EvenMeasure site_density(const SiteMeasure& m) {
  DensitySpec d;
  d.K = 1.0;
  switch (m.kind) {
    case SiteKind::Phi4:
      // e^{-a s^4 - b s^2} as a quartic Polya form with q = 1.
      d.kind = DensityKind::PolyaQuartic;
      d.q = 1;
      d.a = m.a;
      d.b = 0.0;
      d.c = -m.b;
      break;
    case SiteKind::Phi6:
      d.kind = DensityKind::SexticExp;
      d.a = m.a;
      d.b = m.b;
      d.c = m.c;
      break;
    case SiteKind::PlusMinusOne:
      return EvenMeasure::symmetric_atoms({{1.0, 1.0}});
  }
  return EvenMeasure::named(d);
}

// ---------------------------------------------------------------------------

std::vector<Complex> aberth_roots(const std::vector<Real>& coeffs, const PrecisionContext& ctx, int max_iterations) {
  PrecisionGuard guard(ctx);
  std::size_t deg = coeffs.size();
  while (deg > 0 && coeffs[deg - 1] == 0) --deg;
  if (deg < 2) return {};
  --deg;
  if (coeffs[0] == 0) throw Error(ErrorCode::InvalidArgument, "aberth_roots: zero constant term");

  const Real lead = coeffs[deg];
  const Real r = pow(abs(coeffs[0] / lead), Real(1) / Real(static_cast<long>(deg)));
  const Real two_pi = 2 * pi_real();
  std::vector<Complex> z(deg);
  for (std::size_t k = 0; k < deg; ++k) {
    const Real ang = two_pi * Real(static_cast<long>(k)) / Real(static_cast<long>(deg)) + Real(0.4);
    z[k] = Complex(r * cos(ang), r * sin(ang));
  }
  auto eval = [&](const Complex& x, Complex& p, Complex& dp) {
    p = Complex(coeffs[deg]);
    dp = Complex();
    for (std::size_t j = deg; j-- > 0;) {
      dp = dp * x + p;
      p = p * x + Complex(coeffs[j]);
    }
  };
  const Real eps = pow(Real(10), -Real(static_cast<long>(ctx.working_digits) - 5));
  for (int it = 0; it < max_iterations; ++it) {
    Real worst(0);
    for (std::size_t k = 0; k < deg; ++k) {
      Complex p, dp;
      eval(z[k], p, dp);
      if (p.re == 0 && p.im == 0) continue;
      const Complex ratio = p / dp;
      Complex s;
      for (std::size_t j = 0; j < deg; ++j) {
        if (j != k) s += Complex(Real(1)) / (z[k] - z[j]);
      }
      const Complex w = ratio / (Complex(Real(1)) - ratio * s);
      z[k] -= w;
      const Real rel = abs(w) / (1 + abs(z[k]));
      if (rel > worst) worst = rel;
    }
    if (worst < eps) return z;
  }
  throw Error(ErrorCode::RootFinderNonConvergence,
              "Aberth iteration did not converge in " + std::to_string(max_iterations) + " iterations");
}

LeeYangVerdict verify_leeyang(const SpinSystem& s, const PrecisionContext& ctx, const LeeYangOptions& opt) {
  s.validate();
  PrecisionGuard guard(ctx);
  LeeYangVerdict v;
  if (s.site.kind != SiteKind::PlusMinusOne) {
    v.route = LeeYangRoute::SingleSiteQuadrature;
    v.window_verdict = verify_all_real(site_density(s.site), 0.0, opt.window, ctx, opt.verify);
    v.lee_yang = v.window_verdict.all_real;
    return v;
  }
  if (!s.unit_fields()) {
    v.route = LeeYangRoute::AtomicWindow;
    v.window_verdict = verify_all_real(spin_sum_measure(s), 0.0, opt.window, ctx, opt.verify);
    v.lee_yang = v.window_verdict.all_real;
    return v;
  }
  // y^n F is a polynomial in w = y^2 of degree n with coefficients c_{2j-n}.
  v.route = LeeYangRoute::Polynomial;
  const PartitionPolynomial p = build_partition_polynomial(s);
  std::vector<Real> q(s.n + 1);
  for (int j = 0; j <= s.n; ++j) q[j] = Real(p.coefficient(2 * j - s.n));
  const std::vector<Complex> w = aberth_roots(q, ctx);
  double dev = 0;
  for (const auto& wk : w) {
    const Complex y = sqrt(wk);
    const std::complex<double> yd = y.to_std();
    v.roots.push_back(yd);
    v.roots.push_back(-yd);
    dev = std::max(dev, std::abs(to_double(abs(y)) - 1.0));
  }
  v.max_deviation = dev;
  v.lee_yang = dev < opt.tolerance;
  return v;
}

SpinSystem planted_violation() {
  SpinSystem s;
  s.n = 2;
  s.J = {0.0, -2.0, -2.0, 0.0};
  s.beta = 1.0;
  s.search_mode = true;
  return s;
}

SpinSystem random_ferromagnet(int n, double beta, double j_max, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, j_max);
  SpinSystem s;
  s.n = n;
  s.beta = beta;
  s.J.assign(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double v = u(rng);
      s.J[static_cast<std::size_t>(i) * n + j] = v;
      s.J[static_cast<std::size_t>(j) * n + i] = v;
    }
  }
  return s;
}

std::vector<Phi6Finding> phi6_search(const std::vector<double>& as, const std::vector<double>& bs,
                                     const std::vector<double>& cs, const Rectangle& window,
                                     const PrecisionContext& ctx) {
  std::vector<Phi6Finding> out;
  for (double a : as) {
    for (double b : bs) {
      for (double c : cs) {
        Phi6Finding f;
        f.a = a;
        f.b = b;
        f.c = c;
        VerifyOptions vo;
        const RealityVerdict r = verify_all_real(site_density({SiteKind::Phi6, a, b, c}), 0.0, window, ctx, vo);
        f.window_count = r.window_count;
        f.violation = !r.all_real;
        if (r.worst_offender) f.offender = *r.worst_offender;
        out.push_back(f);
      }
    }
  }
  return out;
}

}  // namespace dbn

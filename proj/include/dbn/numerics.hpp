#pragma once

#include "dbn/complex.hpp"
#include "dbn/measures.hpp"
#include "dbn/precision.hpp"
#include "dbn/quadrature.hpp"

#include <map>
#include <mutex>
#include <tuple>

namespace dbn {

/// Phi(u) = sum_{n>=1} (4 pi^2 n^4 e^{9|u|/2} - 6 pi n^2 e^{5|u|/2}) exp(-pi n^2 e^{2|u|}).
Real eval_phi(const Real& u, const PrecisionContext& ctx);

/// theta(x) = sum over all integers n of exp(-pi n^2 x), x > 0.
Real eval_theta(const Real& x, const PrecisionContext& ctx);

/// theta(x) - x^{-1/2} theta(1/x).
Real theta_identity_residual(const Real& x, const PrecisionContext& ctx);

/// Riemann zeta by Borwein's alternating-series acceleration of eta, Re s >= 1/2 assumed by caller.
Complex zeta_borwein(const Complex& s, unsigned digits);

/// log Gamma by shifted Stirling series.
Complex lgamma_complex(const Complex& w, unsigned digits);

/// xi(z) = (1/2) s (s-1) Gamma(s/2) pi^{-s/2} zeta(s), s = 1/2 + iz.
Complex eval_xi_reference(const Complex& z, const PrecisionContext& ctx);

/// Quadrature engine for H of a density-type measure at fixed lambda.
/// Integrand values e^{lambda t^2} f(t) are memoized at panel nodes;
/// results do not depend on call order.
class DensityTransform {
 public:
  struct Options {
    unsigned rule_n = 64;
    double root_width = 0.5;
    unsigned max_level = 24;
    double max_cutoff = 2000.0;
  };

  DensityTransform(const EvenMeasure& m, double lambda, const PrecisionContext& ctx);
  DensityTransform(const EvenMeasure& m, double lambda, const PrecisionContext& ctx, Options opt);

  /// H(z) and H'(z) with an a-posteriori error estimate.
  TransformEval eval(const Complex& z) const;

  /// Cutoff T with tail bound below `tail_tol` for |Im z| = y.
  double cutoff(double y, double tail_tol) const;

  /// Panel-halving check: evaluation with root width halved.
  TransformEval eval_refined(const Complex& z) const;

  const EvenMeasure& measure() const { return measure_; }
  double lambda() const { return lambda_; }

 private:
  using Key = std::tuple<long, unsigned, long>;  // root index, level, index within level
  const std::vector<Real>& samples(long root, unsigned level, long idx, const Real& a, const Real& h) const;
  TransformEval eval_impl(const Complex& z, double width) const;

  EvenMeasure measure_;
  double lambda_;
  PrecisionContext ctx_;
  Options opt_;
  std::shared_ptr<const CCRule> rule_;
  mutable std::mutex mutex_;
  mutable std::map<std::pair<Key, double>, std::vector<Real>> cache_;
};

/// 2 * integral_0^T cos(zt) e^{lambda t^2} f(t) dt with tail and quadrature error accounted.
TransformEval eval_H_density(const EvenMeasure& m, double lambda, const Complex& z, const PrecisionContext& ctx);

}  // namespace dbn

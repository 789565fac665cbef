#pragma once

#include "dbn/complex.hpp"
#include "dbn/precision.hpp"

#include <memory>
#include <string>
#include <vector>

namespace dbn {

enum class MeasureKind { SymmetricAtoms, NamedDensity, GaussianConvolution, MultipliedMeasure };

enum class DensityKind {
  RiemannPhi,         // Phi(t)
  Gaussian,           // K exp(-b0 t^2)
  ExpPower,           // K exp(-t^(2q))
  CoshExp,            // K exp(-a cosh t)
  DBNClass,           // K t^(2m) exp(-alpha t^4 - beta t^2) prod (1 + t^2/a_j^2) exp(-t^2/a_j^2)
  PolyaQuartic,       // K exp(-a t^(4q) + b t^(2q) + c t^2)
  AbsExpGaussian,     // K exp(-a|t| - lambda t^2)
  PolyDecayGaussian,  // K (1 + t^2)^(-theta) exp(-lambda t^2)
  SexticExp,          // K exp(-a t^6 - b t^4 - c t^2)
  Case6,              // K exp(-t^2) (1 + t); not even, closed form only
  Case8,              // integer-valued X with P(X = k) = (1 + k^2)/2 * e^-1 I_k(1)
};

const char* to_string(MeasureKind k);
const char* to_string(DensityKind k);

/// Parameters of a named density. Unused fields are ignored for a given kind.
struct DensitySpec {
  DensityKind kind = DensityKind::Gaussian;
  double K = 1.0;
  double b0 = 1.0;      // Gaussian
  int q = 1;            // ExpPower, PolyaQuartic
  double a = 1.0;       // CoshExp, PolyaQuartic, AbsExpGaussian, SexticExp
  double b = 0.0;       // PolyaQuartic, SexticExp
  double c = 0.0;       // PolyaQuartic, SexticExp
  int m = 0;            // DBNClass
  double alpha = 1.0;   // DBNClass
  double beta = 0.0;    // DBNClass
  std::vector<double> a_j;  // DBNClass
  double lambda = 1.0;  // AbsExpGaussian, PolyDecayGaussian
  double theta = 1.0;   // PolyDecayGaussian
};

/// Pair entry (t, w): t > 0 carries total weight w split evenly at +-t; t = 0 is a central atom.
struct Atom {
  double t;
  double w;
};

struct TailSet {
  enum class Shape { AllReals, OpenUpTo, ClosedUpTo };
  Shape shape = Shape::AllReals;
  double b0 = 0.0;

  static TailSet all_reals() { return {Shape::AllReals, 0.0}; }
  static TailSet open_up_to(double b) { return {Shape::OpenUpTo, b}; }
  static TailSet closed_up_to(double b) { return {Shape::ClosedUpTo, b}; }

  /// b is in the tail set: the Gaussian-weighted integral converges.
  bool contains(double b) const;
  /// b is strictly inside (away from any finite endpoint).
  bool interior(double b) const;
  TailSet shifted(double lambda) const;  // tail of e^{lambda t^2} d rho
  std::string describe() const;
  bool operator==(const TailSet& o) const { return shape == o.shape && (shape == Shape::AllReals || b0 == o.b0); }
};

class EvenMeasure {
 public:
  MeasureKind kind = MeasureKind::SymmetricAtoms;
  std::vector<Atom> atoms;               // SymmetricAtoms, base atoms of GaussianConvolution
  DensitySpec density;                   // NamedDensity
  double b0 = 0.0;                       // GaussianConvolution
  double lambda = 0.0;                   // MultipliedMeasure
  bool normalized = false;               // MultipliedMeasure
  std::shared_ptr<const EvenMeasure> base;  // MultipliedMeasure

  static EvenMeasure symmetric_atoms(std::vector<Atom> atoms);
  static EvenMeasure named(DensitySpec spec);
  static EvenMeasure gaussian(double b0, double K = 1.0);
  static EvenMeasure riemann_phi();

  /// Throws InvalidArgument on structural problems (negative weights, bad parameters).
  void validate() const;
  /// Real-valued transform on the real axis and H(-z) = H(z).
  bool is_even() const;
  /// Finite support: all zeros of H are found from atoms.
  bool is_atomic() const;
};

TailSet tail_set(const EvenMeasure& m);

/// e^{lambda t^2} d rho, optionally divided by its total mass. Atoms and
/// Gaussians are simplified in place; other kinds are wrapped.
EvenMeasure apply_gaussian_multiplier(const EvenMeasure& m, double lambda, bool normalize = false);

/// Convolution of a finite atomic measure with the normal law of density (b0/pi)^{1/2} e^{-b0 x^2}.
EvenMeasure convolve_gaussian(const EvenMeasure& base, double b0);

/// lambda at which H_{m,lambda} is entire (interior, or the closed endpoint).
bool entire_at(const EvenMeasure& m, double lambda);

/// Value f(t) of a density-type measure (NamedDensity, GaussianConvolution, MultipliedMeasure over those).
Real density_at(const EvenMeasure& m, const Real& t, const PrecisionContext& ctx);

/// Upper bound for log f(t), t >= 0, in double precision; used to place the quadrature cutoff.
double log_density_envelope(const EvenMeasure& m, double t);

struct TransformEval {
  Complex value;
  Complex derivative;  // dH/dz
  double abs_error_estimate = 0.0;
  double lambda = 0.0;
  Complex z;
  unsigned digits = 0;
  bool closed_form = false;
};

class DensityTransform;

/// Reusable evaluator of z -> H_{m,lambda}(z). Multiplier layers are unwrapped,
/// normalization constants computed once, and quadrature samples shared
/// across calls.
class HEvaluator {
 public:
  HEvaluator(const EvenMeasure& m, double lambda, const PrecisionContext& ctx);
  TransformEval eval(const Complex& z) const;
  bool closed_form() const { return dt_ == nullptr; }
  const EvenMeasure& leaf() const { return leaf_; }
  double leaf_lambda() const { return lambda_; }
  bool even() const { return leaf_.is_even(); }
  const PrecisionContext& context() const { return ctx_; }

 private:
  TransformEval eval_closed(const Complex& z) const;
  EvenMeasure leaf_;
  double lambda_;
  double outer_lambda_;
  PrecisionContext ctx_;
  Real divisor_;
  std::shared_ptr<DensityTransform> dt_;
};

/// H_{m,lambda}(z) = integral of e^{izt} e^{lambda t^2} d m(t), with dH/dz.
TransformEval eval_H(const EvenMeasure& m, double lambda, const Complex& z, const PrecisionContext& ctx);

/// Total mass of e^{lambda t^2} d m.
Real total_mass(const EvenMeasure& m, double lambda, const PrecisionContext& ctx);

/// Integral of t^2 d m / total mass (second moment of the normalized measure).
Real second_moment(const EvenMeasure& m, const PrecisionContext& ctx);

/// Has a closed-form transform (no quadrature).
bool has_closed_form(const EvenMeasure& m);

/// Laplace-variable transform E[e^{wX}] of the Case-8 distribution and its derivative.
void case8_laplace(const Complex& w, Complex& value, Complex& derivative);

}  // namespace dbn

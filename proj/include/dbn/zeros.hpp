#pragma once

#include "dbn/complex.hpp"
#include "dbn/measures.hpp"
#include "dbn/precision.hpp"

#include <complex>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace dbn {

struct FunctionValue {
  Complex value;
  Complex derivative;
  double abs_error = 0.0;
};

/// An entire function known through values and derivatives. Evaluations are
/// memoized on the exact double coordinates of the argument.
class AnalyticFunction {
 public:
  using Fn = std::function<FunctionValue(const Complex&)>;

  AnalyticFunction(Fn f, bool real_on_axis, bool even);

  /// H_{m,lambda}. Real on the axis and even when the measure is.
  static AnalyticFunction from_measure(const EvenMeasure& m, double lambda, const PrecisionContext& ctx);

  FunctionValue operator()(const Complex& z) const;
  FunctionValue at(double re, double im) const;

  bool real_on_axis() const { return real_on_axis_; }
  bool even() const { return even_; }
  std::size_t evaluations() const;

 private:
  Fn f_;
  bool real_on_axis_;
  bool even_;
  struct Memo {
    std::mutex mutex;
    std::map<std::pair<double, double>, FunctionValue> values;
    std::size_t calls = 0;
  };
  std::shared_ptr<Memo> memo_;
};

struct Rectangle {
  double re_min = -1, re_max = 1, im_min = -1, im_max = 1;

  void validate() const;
  bool symmetric() const { return im_min == -im_max; }
  bool contains(const std::complex<double>& z, double pad = 0.0) const;
  double diameter() const;
  Rectangle grown(double fraction) const;
  std::string describe() const;
};

struct Zero {
  Complex location;
  int multiplicity = 1;
  double residual = 0.0;  // |f(location)|
  bool cluster = false;   // unresolved group reported with combined multiplicity
  std::complex<double> z() const { return location.to_std(); }
};

struct ZeroSet {
  Rectangle rect;
  int count = 0;
  std::vector<Zero> zeros;
};

struct CountOptions {
  double max_arg_step = 0.4;      // radians per half segment
  double consistency = 0.05;      // |Simpson(f'/f) - arg change| per segment
  double winding_tol = 0.25;
  int max_depth = 12;
  int max_perturb = 5;
  double perturb_fraction = 0.01;
  double near_zero_ratio = 1e-12;  // |f/f'| / diam below which a contour zero is declared
  int min_segments_per_edge = 8;
};

struct WindingResult {
  int count = 0;
  double raw = 0.0;  // pre-rounding value of the last successful integral
  Rectangle rect;    // rectangle actually used (after any perturbation)
  int perturbations = 0;
  int subdivisions = 0;
};

/// Argument-principle zero count with perturbation and subdivision fallbacks.
WindingResult count_zeros_detailed(const AnalyticFunction& f, const Rectangle& rect, const PrecisionContext& ctx,
                                   const CountOptions& opt = {});
int count_zeros(const AnalyticFunction& f, const Rectangle& rect, const PrecisionContext& ctx,
                const CountOptions& opt = {});

struct RealScanOptions {
  double step = 0.0;          // 0: automatic, min(0.1, length/64)
  double cluster_floor = 1e-9;  // zeros closer than this are reported as a cluster
  double double_zero_rel = 1e-12;  // |f(x*)| / max|f| below which a tangency is a double zero
  int max_refine = 3;         // step halvings when the real count disagrees with the winding count
};

/// Real zeros on [a, b] of f real on the axis, ordered ascending.
std::vector<Zero> locate_real_zeros(const AnalyticFunction& f, double a, double b, const PrecisionContext& ctx,
                                    const RealScanOptions& opt = {});

/// All zeros in the rectangle by recursive subdivision and Newton refinement.
ZeroSet locate_zeros(const AnalyticFunction& f, const Rectangle& rect, const PrecisionContext& ctx,
                     const CountOptions& opt = {});

struct VerifyOptions {
  bool locate_offenders = true;
  CountOptions count;
  RealScanOptions scan;
};

struct RealityVerdict {
  Rectangle window;
  bool all_real = false;
  std::optional<std::complex<double>> worst_offender;
  double margin = 0.0;  // min |Im| over offenders, or the window half-height if none
  int window_count = 0;
  int real_count = 0;
  std::vector<Zero> real_zeros;
  std::vector<Zero> offenders;
  bool symmetry_ok = true;
  std::vector<std::string> warnings;
};

RealityVerdict verify_all_real(const EvenMeasure& m, double lambda, const Rectangle& window,
                               const PrecisionContext& ctx, const VerifyOptions& opt = {});
RealityVerdict verify_all_real(const AnalyticFunction& f, const Rectangle& window, const PrecisionContext& ctx,
                               const VerifyOptions& opt = {});

/// |Im z| at or below this is classified as real.
double real_axis_tolerance(const std::complex<double>& z, const PrecisionContext& ctx);

}  // namespace dbn

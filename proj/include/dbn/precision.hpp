#pragma once

#include <boost/multiprecision/mpfr.hpp>

#include <stdexcept>
#include <string>

namespace dbn {

/// Arbitrary-precision real with runtime-selected precision (decimal digits).
/// Expression templates are disabled so `auto` always yields a value.
using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                           boost::multiprecision::et_off>;

enum class ErrorCode {
  InvalidArgument,
  RangeError,
  PrecisionLoss,
  TailBoundFailure,
  QuadratureNonConvergence,
  EntirenessViolation,
  ContourZero,
  WindingNonIntegral,
  UnresolvedCluster,
  BracketInvalid,
  ParseError,
  NonAscending,
  FormulaDomain,
  CollisionFloor,
  SizeLimit,
  RootFinderNonConvergence,
  InfeasibleConstraint,
  FitIllConditioned,
  UnknownKind,
  Schema,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Working precision and per-evaluation absolute error budget.
struct PrecisionContext {
  unsigned working_digits = 50;
  double target_abs_tol = 1e-30;

  /// Throws InvalidArgument unless target_abs_tol > 0 and
  /// working_digits >= 2 + ceil(-log10(target_abs_tol)).
  void validate() const;

  /// Smallest tolerance admissible for `digits`: 10^-(digits-2).
  static PrecisionContext with_digits(unsigned digits);
};

/// Sets the process-wide default precision of Real for the guard's lifetime.
/// Real values constructed while the guard is alive carry its precision.
/// Must not be created concurrently from worker threads.
class PrecisionGuard {
 public:
  explicit PrecisionGuard(unsigned digits);
  explicit PrecisionGuard(const PrecisionContext& ctx) : PrecisionGuard(ctx.working_digits) {}
  ~PrecisionGuard();
  PrecisionGuard(const PrecisionGuard&) = delete;
  PrecisionGuard& operator=(const PrecisionGuard&) = delete;

 private:
  unsigned saved_;
};

Real pi_real();
Real ln2_real();
Real euler_gamma_real();

inline double to_double(const Real& x) { return x.convert_to<double>(); }

/// Decimal string with `digits` significant digits (scientific).
std::string to_string(const Real& x, int digits = 20);

}  // namespace dbn

#include "dbn/precision.hpp"

#include <cmath>
#include <sstream>

namespace dbn {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid_argument";
    case ErrorCode::RangeError: return "range_error";
    case ErrorCode::PrecisionLoss: return "precision_loss";
    case ErrorCode::TailBoundFailure: return "tail_bound_failure";
    case ErrorCode::QuadratureNonConvergence: return "quadrature_non_convergence";
    case ErrorCode::EntirenessViolation: return "entireness_violation";
    case ErrorCode::ContourZero: return "contour_zero";
    case ErrorCode::WindingNonIntegral: return "winding_non_integral";
    case ErrorCode::UnresolvedCluster: return "unresolved_cluster";
    case ErrorCode::BracketInvalid: return "bracket_invalid";
    case ErrorCode::ParseError: return "parse_error";
    case ErrorCode::NonAscending: return "non_ascending";
    case ErrorCode::FormulaDomain: return "formula_domain";
    case ErrorCode::CollisionFloor: return "collision_floor";
    case ErrorCode::SizeLimit: return "size_limit";
    case ErrorCode::RootFinderNonConvergence: return "root_finder_non_convergence";
    case ErrorCode::InfeasibleConstraint: return "infeasible_constraint";
    case ErrorCode::FitIllConditioned: return "fit_ill_conditioned";
    case ErrorCode::UnknownKind: return "unknown_kind";
    case ErrorCode::Schema: return "schema";
  }
  return "unknown";
}

void PrecisionContext::validate() const {
  if (!(target_abs_tol > 0.0) || !std::isfinite(target_abs_tol)) {
    throw Error(ErrorCode::InvalidArgument, "target_abs_tol must be positive and finite");
  }
  const double needed = 2.0 + std::ceil(-std::log10(target_abs_tol));
  if (static_cast<double>(working_digits) < needed) {
    throw Error(ErrorCode::InvalidArgument,
                "working_digits=" + std::to_string(working_digits) + " too small for tolerance; need >= " +
                    std::to_string(static_cast<int>(needed)));
  }
}

PrecisionContext PrecisionContext::with_digits(unsigned digits) {
  return PrecisionContext{digits, std::pow(10.0, -static_cast<double>(digits - 2))};
}

// Writes only on change, so nested guards at the ambient precision are
// read-only and safe inside parallel regions.
PrecisionGuard::PrecisionGuard(unsigned digits) : saved_(Real::default_precision()) {
  if (saved_ != digits) Real::default_precision(digits);
}

PrecisionGuard::~PrecisionGuard() {
  if (Real::default_precision() != saved_) Real::default_precision(saved_);
}

Real pi_real() {
  Real r;
  mpfr_const_pi(r.backend().data(), MPFR_RNDN);
  return r;
}

Real ln2_real() {
  Real r;
  mpfr_const_log2(r.backend().data(), MPFR_RNDN);
  return r;
}

Real euler_gamma_real() {
  Real r;
  mpfr_const_euler(r.backend().data(), MPFR_RNDN);
  return r;
}

std::string to_string(const Real& x, int digits) {
  return x.str(digits, std::ios_base::scientific);
}

}  // namespace dbn

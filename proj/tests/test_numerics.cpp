#include "doctest.h"
#include "oracles.hpp"

#include "dbn/measures.hpp"
#include "dbn/numerics.hpp"

using namespace dbn;

namespace {

double rel(const Real& a, const oracle::Big& b) {
  const double bd = static_cast<double>(b);
  return std::abs(to_double(a) - bd) / std::abs(bd);
}

}  // namespace

TEST_SUITE("numerics") {

TEST_CASE("phi at u = 2 is tiny and positive, matching the 100-term sum") {
  PrecisionContext ctx;
  PrecisionGuard g(ctx);
  const Real v = eval_phi(Real(2), ctx);
  CHECK(v > 0);
  CHECK(v < Real(1e-30));
  const auto ref = oracle::phi_series(2.0, 100, 200);
  CHECK(rel(v, ref) < 1e-14);
}

TEST_CASE("phi is even") {
  PrecisionContext ctx;
  PrecisionGuard g(ctx);
  CHECK(eval_phi(Real(0.5), ctx) == eval_phi(Real(-0.5), ctx));
}

TEST_CASE("phi at 0 matches an independent term-by-term sum") {
  PrecisionContext ctx;
  PrecisionGuard g(ctx);
  const Real v = eval_phi(Real(0), ctx);
  const auto ref = oracle::phi_series(0.0, 100, 200);
  CHECK(v > 0);
  CHECK(std::abs(to_double(v) - static_cast<double>(ref)) <= ctx.target_abs_tol + 1e-16);
  // Compare beyond double precision.
  PrecisionGuard wide(60);
  const oracle::Big diff = oracle::Big(to_string(v, 45)) - ref;
  CHECK(abs(diff) < ctx.target_abs_tol);
}

TEST_CASE("theta inversion identity") {
  const PrecisionContext ctx{20, 1e-15};
  PrecisionGuard g(ctx);
  CHECK(std::abs(to_double(theta_identity_residual(Real(2), ctx))) < 1e-12);
  for (double x : {0.25, 0.5, 1.0, 4.0}) CHECK(std::abs(to_double(theta_identity_residual(Real(x), ctx))) < 1e-12);
}

TEST_CASE("theta at x = 1 has vanishing residual") {
  PrecisionContext ctx;
  PrecisionGuard g(ctx);
  CHECK(std::abs(to_double(theta_identity_residual(Real(1), ctx))) < 1e-45);
}

TEST_CASE("theta at x = 50 is 1 to beyond 50 digits") {
  const PrecisionContext ctx{120, 1e-100};
  PrecisionGuard g(ctx);
  const Real d = eval_theta(Real(50), ctx) - 1;
  CHECK(d > 0);
  CHECK(d < Real(1e-50));
}

TEST_CASE("theta against a direct sum") {
  PrecisionContext ctx;
  PrecisionGuard g(ctx);
  for (double x : {0.25, 0.5, 2.0}) {
    const auto ref = oracle::theta_direct(x, 60, 80);
    CHECK(rel(eval_theta(Real(x), ctx), ref) < 1e-15);
  }
}

TEST_CASE("xi reference at 0 agrees with the transform of Phi") {
  PrecisionContext ctx;
  PrecisionGuard g(ctx);
  const Complex x = eval_xi_reference(Complex(0.0, 0.0), ctx);
  const TransformEval h = eval_H(EvenMeasure::riemann_phi(), 0.0, Complex(0.0, 0.0), ctx);
  CHECK(x.re > 0);
  CHECK(std::abs(to_double(x.re) - 0.497120778188314) < 1e-14);
  CHECK(to_double(abs(x - h.value)) <= h.abs_error_estimate + 1e-25);
}

TEST_CASE("xi changes sign between 14.0 and 14.3") {
  PrecisionContext ctx;
  PrecisionGuard g(ctx);
  const Complex a = eval_xi_reference(Complex(14.0, 0.0), ctx);
  const Complex b = eval_xi_reference(Complex(14.3, 0.0), ctx);
  CHECK(a.re * b.re < 0);
}

TEST_CASE("xi is real on the real axis") {
  PrecisionContext ctx;
  PrecisionGuard g(ctx);
  for (double z : {0.7, 5.0, 21.0}) {
    const Complex v = eval_xi_reference(Complex(z, 0.0), ctx);
    CHECK(std::abs(to_double(v.im)) <= 1e-30 * (1 + std::abs(to_double(v.re))));
  }
}

TEST_CASE("xi is even") {
  PrecisionContext ctx;
  PrecisionGuard g(ctx);
  const Complex a = eval_xi_reference(Complex(3.1, 0.4), ctx);
  const Complex b = eval_xi_reference(Complex(-3.1, -0.4), ctx);
  CHECK(to_double(abs(a - b)) < 1e-35);
}

}  // TEST_SUITE

#pragma once

#include "dbn/measures.hpp"
#include "dbn/zeros.hpp"

#include <complex>
#include <cstdint>
#include <vector>

namespace dbn {

enum class SiteKind { PlusMinusOne, Phi4, Phi6 };

/// Phi4: e^{-a s^4 - b s^2} ds. Phi6: e^{-a s^6 - b s^4 - c s^2} ds.
struct SiteMeasure {
  SiteKind kind = SiteKind::PlusMinusOne;
  double a = 1.0, b = 0.0, c = 0.0;
};

const char* to_string(SiteKind k);

constexpr int kMaxSpins = 20;

struct SpinSystem {
  int n = 1;
  std::vector<double> J;              // row-major n*n, symmetric, zero diagonal
  std::vector<double> field_weights;  // lambda_i; empty means all 1
  double beta = 1.0;
  SiteMeasure site;
  bool search_mode = false;  // permits negative couplings

  double coupling(int i, int j) const { return J[static_cast<std::size_t>(i) * n + j]; }
  double field(int i) const { return field_weights.empty() ? 1.0 : field_weights[i]; }
  bool unit_fields() const;
  bool integer_fields() const;
  /// Throws InvalidArgument (SizeLimit for n > 20).
  void validate() const;
};

/// F(z) = sum_m c_m e^{i m z}; c_m stored at index m + n.
struct PartitionPolynomial {
  int n = 0;
  std::vector<double> coefficients;
  double log_Z = 0.0;  // log of the unnormalized sum of weights

  double coefficient(int m) const { return coefficients[m + n]; }
};

/// Exact enumeration over {-1,1}^n, normalized to total mass 1 and symmetrized.
/// Requires PlusMinusOne sites with unit fields.
PartitionPolynomial build_partition_polynomial(const SpinSystem& s);

std::complex<double> eval_partition_polynomial(const PartitionPolynomial& p, std::complex<double> z);
/// Normalized brute-force sum of exp(beta sum_{i != j} J_ij x_i x_j) e^{i z sum lambda_i x_i}.
std::complex<double> eval_partition_direct(const SpinSystem& s, std::complex<double> z);

/// The even atomic measure of sum lambda_i x_i under the Gibbs weights (PlusMinusOne sites).
EvenMeasure spin_sum_measure(const SpinSystem& s);

/// Transform of a single-site measure as an EvenMeasure density.
EvenMeasure site_density(const SiteMeasure& m);

/// All complex roots of sum_j coeffs[j] w^j by Aberth-Ehrlich iteration at ctx precision.
std::vector<Complex> aberth_roots(const std::vector<Real>& coeffs, const PrecisionContext& ctx, int max_iterations = 2000);

enum class LeeYangRoute { Polynomial, AtomicWindow, SingleSiteQuadrature };
const char* to_string(LeeYangRoute r);

struct LeeYangOptions {
  double tolerance = 1e-10;  // on max ||y| - 1|
  Rectangle window{-10, 10, -2, 2};
  VerifyOptions verify;
};

struct LeeYangVerdict {
  LeeYangRoute route = LeeYangRoute::Polynomial;
  bool lee_yang = false;
  /// Polynomial route: max ||y| - 1| over the roots y.
  double max_deviation = 0.0;
  std::vector<std::complex<double>> roots;  // y = e^{iz}, polynomial route
  RealityVerdict window_verdict;             // other routes
};

LeeYangVerdict verify_leeyang(const SpinSystem& s, const PrecisionContext& ctx, const LeeYangOptions& opt = {});

/// n = 2, J_12 = -2, beta = 1: antiferromagnetic pair whose roots leave the unit circle.
SpinSystem planted_violation();

/// Ferromagnetic PlusMinusOne system with J_ij uniform on [0, j_max).
SpinSystem random_ferromagnet(int n, double beta, double j_max, std::uint64_t seed);

struct Phi6Finding {
  double a = 0, b = 0, c = 0;
  bool violation = false;
  std::complex<double> offender;
  int window_count = 0;
};

/// Best-effort search over a parameter grid for single-site Phi6 measures whose
/// transform has a nonreal zero in the window. No finding is not a claim.
std::vector<Phi6Finding> phi6_search(const std::vector<double>& as, const std::vector<double>& bs,
                                     const std::vector<double>& cs, const Rectangle& window,
                                     const PrecisionContext& ctx);

}  // namespace dbn

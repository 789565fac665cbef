#pragma once

#include "dbn/estimator.hpp"
#include "dbn/measures.hpp"
#include "dbn/zeros.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace dbn {

// ---- case measures ---------------------------------------------------------

/// (1/6)(delta_1 + delta_-1) + (2/3) delta_0.
EvenMeasure case2_measure();
/// b with 1/6 e^b y^2 + 2/3 y + 1/6 e^b having roots only on |y| = 1, i.e. e^b >= 2.
bool case2_closed_form_real(double b);
/// (3 delta_0 + delta_1 + delta_-1)/5 convolved with the normal law of precision b0.
EvenMeasure case5_measure(double b0);
/// b0 - b0^2 / (b0 + ln 3/2).
double case5_threshold(double b0);
EvenMeasure case6_measure();
EvenMeasure case8_measure();
EvenMeasure case1_dbn_measure();
EvenMeasure case9_absexp_measure();
EvenMeasure case9_polydecay_measure();

// ---- reports ---------------------------------------------------------------

struct CaseCheck {
  std::string name;
  bool pass = false;
  std::string details;
};

struct CaseReport {
  int case_id = 0;
  std::optional<EvenMeasure> measure;
  TailSet claimed_tail;
  std::string claimed_P;
  bool report_only = false;
  std::string statement;
  std::vector<CaseCheck> checks;
  std::map<std::string, double> values;  // headline numbers, e.g. a threshold

  bool passed() const;
};

/// Builds the case's measure and runs its checks. Failures are recorded, not thrown.
CaseReport run_case(int case_id, const PrecisionContext& ctx);

/// Cases are run one after another: quadrature-backed cases change the
/// process-wide working precision.
std::vector<CaseReport> run_all_cases(const PrecisionContext& ctx);

// ---- Case 3 construction ---------------------------------------------------

struct Case3Step {
  int n = 0;
  Real log_a_next;          // log a_{n+1}
  Real b;                   // b_n
  std::string binding;      // constraint that fixed a_{n+1}
  Real equal_mass_residual; // |log a_{n+1} + b d_{n+1}^2 - logsumexp_k (log a_k + b d_k^2)|
  double weight_zero = 0;   // rescaled mass within 1/2 of 0
  double weight_plus = 0;   // rescaled mass within 1/2 of +1
  double weight_minus = 0;
};

struct Case3Construction {
  int n_max = 0;
  unsigned digits = 0;
  std::vector<Real> log_d;  // log d_k = k^2, k = 1..n_max+1
  std::vector<Real> log_a;  // log a_k, k = 1..n_max+1
  std::vector<Case3Step> steps;  // n = 1..n_max
};

/// d_k = e^{k^2}, a_1 = 1; a_{n+1} is the largest a meeting the three inductive
/// constraints, and b_n solves the equal-mass equation. All arithmetic is on
/// log-weights at max(ctx digits, 150) digits.
Case3Construction construct_case3(int n_max, const PrecisionContext& ctx);

// ---- product representation ------------------------------------------------

struct ProductRep {
  double B = 0.0;
  bool structural_B = false;  // B fixed at 0 for finite atomic measures (exponential type)
  double B_fit = 0.0;         // slope fit on the imaginary axis, corrected for truncated zeros
  std::vector<double> y;      // positive zeros used, ascending
  int truncation_count = 0;
};

struct ProductRepCheck {
  ProductRep rep;
  double second_moment = 0.0;  // E[X^2] of the normalized measure
  double partial = 0.0;        // 2 (B + sum_k 1/y_k^2)
  double residual = 0.0;       // |second_moment - partial|
  double tail_allowance = 0.0; // bound on 2 sum over omitted zeros
  bool within_allowance = false;
};

/// Locates up to k_trunc positive real zeros on (0, window.re_max], fits B and
/// compares the second-moment identity with an allowance for omitted zeros.
/// Throws FitIllConditioned when the imaginary-axis fit has no usable slope.
ProductRepCheck product_rep_check(const EvenMeasure& m, const Rectangle& window, int k_trunc,
                                  const PrecisionContext& ctx);

// ---- universal-factor monotonicity ------------------------------------------

struct MonotonicitySubject {
  std::string name;
  EvenMeasure measure;
  double lambda0 = 0.0;   // a lambda with a real-zero verdict
  double lambda_hi = 0.0; // upper end of the finer grid
  Rectangle window;
};

std::vector<MonotonicitySubject> monotonicity_subjects();

/// Verdicts on lambda0 + (lambda_hi - lambda0) i / steps, i = 0..steps.
ScanResult check_monotonicity(const MonotonicitySubject& s, int steps, const PrecisionContext& ctx);

}  // namespace dbn

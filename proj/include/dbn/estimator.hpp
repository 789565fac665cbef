#pragma once

#include "dbn/measures.hpp"
#include "dbn/zeros.hpp"

#include <istream>
#include <optional>
#include <string>
#include <vector>

namespace dbn {

struct LambdaVerdict {
  double lambda = 0.0;
  bool entire = false;
  RealityVerdict verdict;
  /// Entire with only real zeros inside the window.
  bool real_zeros() const { return entire && verdict.all_real; }
};

struct ScanResult {
  std::vector<LambdaVerdict> verdicts;
  /// A real-zero verdict followed by a nonreal one at larger lambda.
  bool monotone = true;
  std::vector<std::string> warnings;
};

/// One verdict per lambda. Grid order is preserved in the output.
ScanResult scan_lambda(const EvenMeasure& m, const std::vector<double>& lambdas, const Rectangle& window,
                       const PrecisionContext& ctx, const VerifyOptions& opt = {});

struct BisectResult {
  double lambda_star = 0.0;
  double lo = 0.0, hi = 0.0;
  int iterations = 0;
  Rectangle window;  // estimates are relative to this window
};

/// Verdict flip point in the window. Requires verdict(lo) false and verdict(hi) true.
BisectResult bisect_lambda(const EvenMeasure& m, double lo, double hi, const Rectangle& window, double tol,
                           const PrecisionContext& ctx, const VerifyOptions& opt = {});

// ---- zero tables and Lehmer-pair bounds -----------------------------------

struct ZeroTable {
  std::vector<double> ordinates;  // strictly ascending, positive
  std::string source_label;
};

/// One decimal per line; '#' lines and blank lines are skipped.
ZeroTable ingest_zero_table(std::istream& in, const std::string& label = "stream");
ZeroTable ingest_zero_table_text(const std::string& text, const std::string& label = "text");
ZeroTable load_zero_table(const std::string& path);

struct LehmerPairRecord {
  int k = 0;
  double gap = 0.0;
  double g_k = 0.0;
  double bracket = 0.0;  // 1 - (5/4) gap^2 g_k
  double lambda_k = 0.0;
  double truncation_radius = 0.0;
  double tail_bound = 0.0;  // 4 * density / radius
  bool coverage_complete = true;  // table reaches x_k + radius
};

constexpr double kDefaultTruncationRadius = 500.0;

/// Throws FormulaDomain when the bracket is negative.
LehmerPairRecord lehmer_lower_bound(const ZeroTable& table, int k, double truncation_radius = kDefaultTruncationRadius);

struct LehmerBatchEntry {
  int k = 0;
  std::optional<LehmerPairRecord> record;
  std::string skipped_reason;  // set when record is empty
};

/// Records for k in [k_from, k_to]; negative brackets are skipped, not clamped.
std::vector<LehmerBatchEntry> lehmer_batch(const ZeroTable& table, int k_from, int k_to,
                                           double truncation_radius = kDefaultTruncationRadius);

/// Zeros per unit length near x_k over the truncation window, reflections included.
double local_zero_density(const ZeroTable& table, int k, double radius);

/// sqrt(max(delta^2 - lambda, 0)).
double debruijn_strip_halfwidth(double delta, double lambda);

}  // namespace dbn

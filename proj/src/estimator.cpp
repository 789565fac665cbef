#include "dbn/estimator.hpp"

#include "dbn/kernels.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace dbn {

namespace {

LambdaVerdict verdict_at(const EvenMeasure& m, double lambda, const Rectangle& window, const PrecisionContext& ctx,
                         const VerifyOptions& opt) {
  LambdaVerdict v;
  v.lambda = lambda;
  v.entire = entire_at(m, lambda);
  v.verdict.window = window;
  if (v.entire) v.verdict = verify_all_real(m, lambda, window, ctx, opt);
  return v;
}

}  // namespace

ScanResult scan_lambda(const EvenMeasure& m, const std::vector<double>& lambdas, const Rectangle& window,
                       const PrecisionContext& ctx, const VerifyOptions& opt) {
  PrecisionGuard guard(ctx);
  ScanResult out;
  out.verdicts.resize(lambdas.size());
  // Closed-form transforms never change the working precision, so their grid
  // points can run concurrently; quadrature-backed ones raise it internally.
  const bool parallel = has_closed_form(m) && kernels::default_exec() == kernels::Exec::Parallel;
  if (parallel) {
    std::vector<std::string> errors(lambdas.size());
#pragma omp parallel for schedule(dynamic)
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
      try {
        out.verdicts[i] = verdict_at(m, lambdas[i], window, ctx, opt);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
    for (const auto& e : errors) {
      if (!e.empty()) throw Error(ErrorCode::InvalidArgument, "scan_lambda: " + e);
    }
  } else {
    for (std::size_t i = 0; i < lambdas.size(); ++i) out.verdicts[i] = verdict_at(m, lambdas[i], window, ctx, opt);
  }
  // Monotonicity check along increasing lambda.
  std::vector<std::size_t> order(lambdas.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return lambdas[a] < lambdas[b]; });
  bool seen_true = false;
  double first_true = 0;
  for (std::size_t i : order) {
    const auto& v = out.verdicts[i];
    if (!v.entire) continue;
    if (v.real_zeros()) {
      if (!seen_true) first_true = v.lambda;
      seen_true = true;
    } else if (seen_true) {
      out.monotone = false;
      std::ostringstream os;
      os << "real-then-nonreal flip: real at " << first_true << ", nonreal at " << v.lambda
         << " (numerical resolution warning)";
      out.warnings.push_back(os.str());
    }
  }
  return out;
}

BisectResult bisect_lambda(const EvenMeasure& m, double lo, double hi, const Rectangle& window, double tol,
                           const PrecisionContext& ctx, const VerifyOptions& opt_in) {
  if (!(lo < hi) || !(tol > 0)) throw Error(ErrorCode::InvalidArgument, "bisect_lambda needs lo < hi and tol > 0");
  PrecisionGuard guard(ctx);
  VerifyOptions opt = opt_in;
  opt.locate_offenders = false;
  auto is_real = [&](double l) { return verdict_at(m, l, window, ctx, opt).real_zeros(); };
  if (is_real(lo)) {
    throw Error(ErrorCode::BracketInvalid, "bracket invalid: verdict at lo=" + std::to_string(lo) + " is already real");
  }
  if (!is_real(hi)) {
    throw Error(ErrorCode::BracketInvalid, "bracket invalid: verdict at hi=" + std::to_string(hi) + " is not real");
  }
  BisectResult out;
  out.window = window;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (is_real(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
    ++out.iterations;
  }
  out.lo = lo;
  out.hi = hi;
  out.lambda_star = 0.5 * (lo + hi);
  return out;
}

// ---------------------------------------------------------------------------

ZeroTable ingest_zero_table(std::istream& in, const std::string& label) {
  ZeroTable t;
  t.source_label = label;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    std::size_t e = line.find_last_not_of(" \t\r");
    std::string_view s(line.data() + b, e - b + 1);
    if (s.front() == '#') continue;
    double v = 0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size() || !std::isfinite(v)) {
      throw Error(ErrorCode::ParseError, label + ":" + std::to_string(lineno) + ": cannot parse '" + std::string(s) + "'");
    }
    if (!(v > 0)) throw Error(ErrorCode::ParseError, label + ":" + std::to_string(lineno) + ": ordinate must be positive");
    if (!t.ordinates.empty() && !(v > t.ordinates.back())) {
      throw Error(ErrorCode::NonAscending, label + ":" + std::to_string(lineno) + ": ordinates not strictly ascending");
    }
    t.ordinates.push_back(v);
  }
  return t;
}

ZeroTable ingest_zero_table_text(const std::string& text, const std::string& label) {
  std::istringstream in(text);
  return ingest_zero_table(in, label);
}

ZeroTable load_zero_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open zero table " + path);
  return ingest_zero_table(in, path);
}

double local_zero_density(const ZeroTable& table, int k, double radius) {
  const double xk = table.ordinates.at(static_cast<std::size_t>(k - 1));
  int count = 0;
  for (double x : table.ordinates) {
    if (std::abs(x - xk) <= radius) ++count;
    if (std::abs(-x - xk) <= radius) ++count;
  }
  return count / (2.0 * radius);
}

namespace {

LehmerPairRecord finish_record(const ZeroTable& table, int k, double g, double radius) {
  LehmerPairRecord r;
  r.k = k;
  r.truncation_radius = radius;
  r.gap = table.ordinates[k] - table.ordinates[k - 1];
  r.g_k = g;
  r.bracket = 1.0 - 1.25 * r.gap * r.gap * g;
  r.coverage_complete = table.ordinates.back() >= table.ordinates[k - 1] + radius;
  r.tail_bound = 4.0 * local_zero_density(table, k, radius) / radius;
  if (r.bracket < 0) {
    throw Error(ErrorCode::FormulaDomain,
                "k=" + std::to_string(k) + ": 1 - (5/4) gap^2 g_k = " + std::to_string(r.bracket) + " < 0");
  }
  r.lambda_k = (std::pow(r.bracket, 0.8) - 1.0) / (8.0 * g);
  return r;
}

void check_k(const ZeroTable& table, int k, double radius) {
  if (!(radius > 0)) throw Error(ErrorCode::InvalidArgument, "truncation radius must be positive");
  if (k < 1 || static_cast<std::size_t>(k) + 1 > table.ordinates.size()) {
    throw Error(ErrorCode::InvalidArgument, "k=" + std::to_string(k) + ": x_k and x_{k+1} must be in the table");
  }
}

}  // namespace

LehmerPairRecord lehmer_lower_bound(const ZeroTable& table, int k, double truncation_radius) {
  check_k(table, k, truncation_radius);
  const double g = kernels::lehmer_g(table.ordinates, {k}, truncation_radius, kernels::Exec::Serial)[0];
  return finish_record(table, k, g, truncation_radius);
}

std::vector<LehmerBatchEntry> lehmer_batch(const ZeroTable& table, int k_from, int k_to, double truncation_radius) {
  if (k_from > k_to) throw Error(ErrorCode::InvalidArgument, "lehmer_batch needs k_from <= k_to");
  std::vector<int> ks;
  for (int k = k_from; k <= k_to; ++k) {
    check_k(table, k, truncation_radius);
    ks.push_back(k);
  }
  const std::vector<double> g = kernels::lehmer_g(table.ordinates, ks, truncation_radius, kernels::default_exec());
  std::vector<LehmerBatchEntry> out;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    LehmerBatchEntry e;
    e.k = ks[i];
    try {
      e.record = finish_record(table, ks[i], g[i], truncation_radius);
    } catch (const Error& err) {
      if (err.code() != ErrorCode::FormulaDomain) throw;
      e.skipped_reason = err.what();
    }
    out.push_back(std::move(e));
  }
  return out;
}

double debruijn_strip_halfwidth(double delta, double lambda) {
  return std::sqrt(std::max(delta * delta - lambda, 0.0));
}

}  // namespace dbn

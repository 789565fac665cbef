#include "doctest.h"
#include "oracles.hpp"

#include "dbn/casebook.hpp"
#include "dbn/estimator.hpp"
#include "dbn/kernels.hpp"

#include <cmath>
#include <sstream>

using namespace dbn;

namespace {

std::string pattern(const ScanResult& s) {
  std::string p;
  for (const auto& v : s.verdicts) p += v.real_zeros() ? 'T' : 'F';
  return p;
}

std::vector<double> arithmetic(int n, double step) {
  std::vector<double> x;
  for (int j = 1; j <= n; ++j) x.push_back(j * step);
  return x;
}

ZeroTable table_of(std::vector<double> x) { return ZeroTable{std::move(x), "synthetic"}; }

}  // namespace

TEST_SUITE("estimator") {

TEST_CASE("Case-2 scan") {
  PrecisionContext ctx;
  PrecisionGuard g(ctx);
  const ScanResult s = scan_lambda(case2_measure(), {0.5, 0.69, 0.70, 1.0}, {-20, 20, -3, 3}, ctx);
  CHECK(pattern(s) == "FFTT");
  CHECK(s.monotone);
}

TEST_CASE("Gaussian scan is all true") {
  PrecisionContext ctx;
  PrecisionGuard g(ctx);
  const ScanResult s = scan_lambda(EvenMeasure::gaussian(1.0), {-5, 0, 0.9}, {-10, 10, -2, 2}, ctx);
  CHECK(pattern(s) == "TTT");
}

TEST_CASE("Case-6 scan is all false") {
  PrecisionContext ctx;
  PrecisionGuard g(ctx);
  const ScanResult s = scan_lambda(case6_measure(), {0, 0.5, 0.9}, {-3, 3, -3, 3}, ctx);
  CHECK(pattern(s) == "FFF");
}

TEST_CASE("scan marks non-entire points") {
  PrecisionContext ctx;
  PrecisionGuard g(ctx);
  const ScanResult s = scan_lambda(EvenMeasure::gaussian(1.0), {0.5, 1.0, 2.0}, {-10, 10, -2, 2}, ctx);
  CHECK(s.verdicts[0].entire);
  CHECK_FALSE(s.verdicts[1].entire);
  CHECK_FALSE(s.verdicts[2].entire);
}

TEST_CASE("Case-2 bisection") {
  PrecisionContext ctx;
  PrecisionGuard g(ctx);
  const BisectResult b = bisect_lambda(case2_measure(), 0.0, 1.0, {-20, 20, -3, 3}, 1e-6, ctx);
  CHECK(std::abs(b.lambda_star - std::log(2.0)) < 1e-6);
  CHECK(b.hi - b.lo <= 1e-6);
}

TEST_CASE("bracket invalid for the pure cosine") {
  PrecisionContext ctx;
  PrecisionGuard g(ctx);
  try {
    bisect_lambda(EvenMeasure::symmetric_atoms({{1.0, 1.0}}), -5.0, 1.0, {-10, 10, -2, 2}, 1e-6, ctx);
    FAIL("expected BracketInvalid");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BracketInvalid);
  }
}

TEST_CASE("zero table ingestion") {
  const ZeroTable t = ingest_zero_table_text("14.134725\n21.022040\n25.010858\n");
  REQUIRE(t.ordinates.size() == 3);
  CHECK(t.ordinates[2] == 25.010858);
  const ZeroTable h = ingest_zero_table_text("# header\n14.1\n");
  REQUIRE(h.ordinates.size() == 1);
  CHECK(h.ordinates[0] == 14.1);
  CHECK(ingest_zero_table_text("  \n14.1  \n\n21.0\r\n").ordinates.size() == 2);
}

TEST_CASE("zero table errors") {
  try {
    ingest_zero_table_text("21.0\n14.1\n");
    FAIL("expected NonAscending");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonAscending);
  }
  try {
    ingest_zero_table_text("14.1\nabc\n", "t");
    FAIL("expected ParseError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ParseError);
    CHECK(std::string(e.what()).find("t:2") != std::string::npos);
  }
  CHECK_THROWS_AS(ingest_zero_table_text("-3.0\n"), Error);
  CHECK_THROWS_AS(load_zero_table("/nonexistent/zeros.txt"), Error);
}

TEST_CASE("tabulated ordinates agree with the located zeros") {
  const ZeroTable t = load_zero_table(DBN_TEST_DATA "/zeta_zeros_100.txt");
  REQUIRE(t.ordinates.size() == 100);
  CHECK(std::abs(t.ordinates[0] - oracle::kXiZero1) < 1e-12);
  CHECK(std::abs(t.ordinates[1] - oracle::kXiZero2) < 1e-12);
}

TEST_CASE("g_k against the brute-force double sum") {
  const ZeroTable t = table_of(arithmetic(60, 10.0));
  const double g = kernels::lehmer_g(t.ordinates, {5}, 200.0, kernels::Exec::Serial)[0];
  const double ref = oracle::lehmer_g_bruteforce(t.ordinates, 5, 200.0);
  CHECK(std::abs(g - ref) <= 1e-12 * ref);
  // Uniform spacing puts (5/4) gap^2 g_k above 1 at every scale.
  CHECK(1 - 1.25 * 100.0 * ref < 0);
  try {
    lehmer_lower_bound(t, 5, 200.0);
    FAIL("expected FormulaDomain");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::FormulaDomain);
  }
}

TEST_CASE("defined record matches the formula") {
  std::vector<double> x = arithmetic(60, 10.0);
  x[5] = x[4] + 0.5;
  const ZeroTable t = table_of(x);
  const LehmerPairRecord r = lehmer_lower_bound(t, 5, 200.0);
  const double ref = oracle::lehmer_g_bruteforce(x, 5, 200.0);
  CHECK(std::abs(r.g_k - ref) <= 1e-12 * ref);
  CHECK(r.lambda_k < 0);
  CHECK(std::abs(r.lambda_k - oracle::lehmer_lambda(0.5, ref)) < 1e-15);
  CHECK(r.truncation_radius == 200.0);
}

TEST_CASE("smaller gap gives lambda_k closer to 0") {
  auto with_gap = [](double gap) {
    std::vector<double> x = arithmetic(60, 10.0);
    x[5] = x[4] + gap;
    return table_of(x);
  };
  const double l1 = lehmer_lower_bound(with_gap(1.0), 5, 200.0).lambda_k;
  const double l01 = lehmer_lower_bound(with_gap(0.1), 5, 200.0).lambda_k;
  CHECK(l1 < 0);
  CHECK(l01 < 0);
  CHECK(std::abs(l01) < std::abs(l1));
}

TEST_CASE("first zeta pair lies outside the formula domain") {
  // gap 6.887 and the neighbour at 25.01 alone give (5/4) gap^2 g_k > 1.
  const ZeroTable t = load_zero_table(DBN_TEST_DATA "/zeta_zeros_100.txt");
  const double g = oracle::lehmer_g_bruteforce(t.ordinates, 1, 100.0);
  const double gap = oracle::kXiZero2 - oracle::kXiZero1;
  CHECK(1 - 1.25 * gap * gap * g < 0);
  for (int run = 0; run < 2; ++run) {
    try {
      lehmer_lower_bound(t, 1, 100.0);
      FAIL("expected FormulaDomain");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::FormulaDomain);
    }
  }
}

TEST_CASE("defined zeta records are finite, negative and reproducible") {
  const ZeroTable t = load_zero_table(DBN_TEST_DATA "/zeta_zeros_100.txt");
  const LehmerPairRecord a = lehmer_lower_bound(t, 34, 100.0);
  const LehmerPairRecord b = lehmer_lower_bound(t, 34, 100.0);
  CHECK(std::isfinite(a.lambda_k));
  CHECK(a.lambda_k < 0);
  CHECK(std::abs(a.lambda_k - b.lambda_k) < 1e-9);
  CHECK(std::abs(a.g_k - oracle::lehmer_g_bruteforce(t.ordinates, 34, 100.0)) < 1e-12 * a.g_k);
}

TEST_CASE("negative bracket is a formula-domain error") {
  // A wide gap among tightly packed neighbours.
  std::vector<double> x{1.0, 1.1, 1.2, 5.0, 9.0, 9.1, 9.2};
  try {
    lehmer_lower_bound(table_of(x), 3, 100.0);
    FAIL("expected FormulaDomain");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::FormulaDomain);
  }
  const auto batch = lehmer_batch(table_of(x), 3, 3, 100.0);
  REQUIRE(batch.size() == 1);
  CHECK_FALSE(batch[0].record.has_value());
  CHECK_FALSE(batch[0].skipped_reason.empty());
}

TEST_CASE("g_k truncation convergence within the tail bound") {
  const ZeroTable t = table_of(arithmetic(400, 1.0));
  const int k = 200;
  const double g50 = kernels::lehmer_g(t.ordinates, {k}, 50.0, kernels::Exec::Serial)[0];
  const double g100 = kernels::lehmer_g(t.ordinates, {k}, 100.0, kernels::Exec::Serial)[0];
  const double tail = 4 * local_zero_density(t, k, 50.0) / 50.0;
  CHECK(g100 > g50);
  CHECK(g100 - g50 < tail);
}

TEST_CASE("batch over the zeta table has lambda_k <= 0") {
  const ZeroTable t = load_zero_table(DBN_TEST_DATA "/zeta_zeros_100.txt");
  int defined = 0;
  for (const auto& e : lehmer_batch(t, 1, 99)) {
    if (!e.record) continue;
    ++defined;
    CHECK(e.record->lambda_k <= 0);
    CHECK(e.record->g_k > 0);
  }
  CHECK(defined > 0);
}

TEST_CASE("de Bruijn strip half-width") {
  CHECK(debruijn_strip_halfwidth(0.5, 0.25) == 0.0);
  CHECK(debruijn_strip_halfwidth(0.5, 0.0) == 0.5);
  CHECK(debruijn_strip_halfwidth(0.0, -3.0) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-15));
}

}  // TEST_SUITE

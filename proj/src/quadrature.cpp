#include "dbn/quadrature.hpp"

#include <map>
#include <mutex>

namespace dbn {

namespace {

// Classical closed-form Clenshaw-Curtis weights (Waldvogel's cosine sum form).
std::vector<Real> cc_weights(unsigned n, const std::vector<Real>& theta) {
  std::vector<Real> w(n + 1);
  const unsigned half = n / 2;
  for (unsigned k = 0; k <= n; ++k) {
    Real s = 0;
    for (unsigned j = 1; j <= half; ++j) {
      Real b = (j == half) ? Real(1) : Real(2);
      s += b * boost::multiprecision::cos(2 * j * theta[k]) / Real(4 * j * j - 1);
    }
    Real c = (k == 0 || k == n) ? Real(1) : Real(2);
    w[k] = c / n * (1 - s);
  }
  return w;
}

std::mutex g_rule_mutex;
std::map<std::pair<unsigned, unsigned>, std::shared_ptr<const CCRule>> g_rules;

}  // namespace

std::shared_ptr<const CCRule> cc_rule(unsigned n, unsigned digits) {
  if (n < 4 || n % 2 != 0) throw Error(ErrorCode::InvalidArgument, "cc_rule: n must be even and >= 4");
  std::lock_guard<std::mutex> lock(g_rule_mutex);
  auto key = std::make_pair(n, digits);
  auto it = g_rules.find(key);
  if (it != g_rules.end()) return it->second;

  PrecisionGuard guard(digits + 10);
  auto rule = std::make_shared<CCRule>();
  rule->n = n;
  rule->digits = digits;
  const Real pi = pi_real();
  std::vector<Real> theta(n + 1);
  for (unsigned k = 0; k <= n; ++k) theta[k] = pi * Real(n - k) / n;
  std::vector<Real> w = cc_weights(n, theta);

  std::vector<Real> theta_c(n / 2 + 1);
  for (unsigned k = 0; k <= n / 2; ++k) theta_c[k] = theta[2 * k];
  std::vector<Real> wc = cc_weights(n / 2, theta_c);

  {
    PrecisionGuard inner(digits);
    rule->nodes.reserve(n + 1);
    for (unsigned k = 0; k <= n; ++k) {
      rule->nodes.emplace_back(boost::multiprecision::cos(theta[k]), digits);
      rule->weights.emplace_back(w[k], digits);
    }
    for (auto& x : wc) rule->coarse_weights.emplace_back(x, digits);
    rule->nodes[n / 2] = 0;
  }
  g_rules.emplace(key, rule);
  return rule;
}

}  // namespace dbn

#include "oracles.hpp"

#include <algorithm>
#include <cmath>

namespace oracle {

namespace {

struct Digits {
  explicit Digits(unsigned d) : saved(Big::default_precision()) { Big::default_precision(d); }
  ~Digits() { Big::default_precision(saved); }
  unsigned saved;
};

}  // namespace

Big phi_series(double u, int terms, unsigned digits) {
  Digits g(digits);
  const Big pi = boost::math::constants::pi<Big>();
  const Big uu = std::abs(u);
  Big s = 0;
  for (int n = 1; n <= terms; ++n) {
    const Big n2 = Big(n) * n;
    const Big a = 4 * pi * pi * n2 * n2 * exp(Big(9) * uu / 2) - 6 * pi * n2 * exp(Big(5) * uu / 2);
    s += a * exp(-pi * n2 * exp(2 * uu));
  }
  return s;
}

Big theta_direct(double x, int terms, unsigned digits) {
  Digits g(digits);
  const Big pi = boost::math::constants::pi<Big>();
  Big s = 1;
  for (int n = 1; n <= terms; ++n) s += 2 * exp(-pi * Big(n) * n * Big(x));
  return s;
}

std::complex<double> gaussian_transform(double b0, std::complex<double> z) {
  return std::sqrt(M_PI / b0) * std::exp(-z * z / (4.0 * b0));
}

std::complex<double> case2_transform(double b, std::complex<double> z) {
  return 2.0 / 3.0 + std::exp(b) / 3.0 * std::cos(z);
}

std::complex<double> case6_transform(double alpha, std::complex<double> z) {
  const std::complex<double> i(0, 1);
  return std::sqrt(M_PI / alpha) * (1.0 + i * z / (2.0 * alpha)) * std::exp(-z * z / (4.0 * alpha));
}

std::complex<double> case8_laplace(std::complex<double> w) {
  const auto c = std::cosh(w);
  return 0.5 * c * (1.0 + c) * std::exp(c - 1.0);
}

double lehmer_g_bruteforce(const std::vector<double>& x, int k, double radius) {
  const int n = static_cast<int>(x.size());
  std::vector<double> all;
  std::vector<int> label;
  for (int j = 1; j <= n; ++j) {
    all.push_back(x[j - 1]);
    label.push_back(j);
    all.push_back(-x[j - 1]);
    label.push_back(-j);
  }
  const double a = x[k - 1], b = x[k];
  long double s1 = 0, s2 = 0;
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (label[i] == k || label[i] == k + 1) continue;
    if (std::fabs(all[i] - a) > radius) continue;
    s1 += 1.0L / ((long double)(a - all[i]) * (a - all[i]));
  }
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (label[i] == k || label[i] == k + 1) continue;
    if (std::fabs(all[i] - a) > radius) continue;
    s2 += 1.0L / ((long double)(b - all[i]) * (b - all[i]));
  }
  return static_cast<double>(s1 + s2);
}

double lehmer_lambda(double gap, double g) {
  return (std::pow(1.0 - 1.25 * gap * gap * g, 0.8) - 1.0) / (8.0 * g);
}

IsingPair ising_pair(double J, double beta) {
  // Ordered pairs (1,2) and (2,1) both contribute J x1 x2.
  const double aligned = std::exp(2 * beta * J), anti = std::exp(-2 * beta * J);
  const double Z = 2 * aligned + 2 * anti;
  return {aligned / Z, 2 * anti / Z, aligned / Z};
}

std::vector<double> ising_pair_root_moduli(double J, double beta) {
  const IsingPair c = ising_pair(J, beta);
  // c2 w^2 + c0 w + c_{-2} = 0 with w = y^2.
  const std::complex<double> disc = std::sqrt(std::complex<double>(c.c0 * c.c0 - 4 * c.c2 * c.cm2));
  const std::complex<double> w1 = (-c.c0 + disc) / (2 * c.c2), w2 = (-c.c0 - disc) / (2 * c.c2);
  std::vector<double> r{std::sqrt(std::abs(w1)), std::sqrt(std::abs(w1)), std::sqrt(std::abs(w2)),
                        std::sqrt(std::abs(w2))};
  std::sort(r.begin(), r.end());
  return r;
}

double two_particle_position(double a0, double t) { return std::sqrt(a0 * a0 + 2 * t); }

double cos_zero_partial(int K) {
  long double s = 0;
  for (int k = K - 1; k >= 0; --k) {
    const long double y = (k + 0.5L) * 3.14159265358979323846264338327950288L;
    s += 1.0L / (y * y);
  }
  return static_cast<double>(s);
}

double case5_threshold(double b0) { return b0 - b0 * b0 / (b0 + std::log(1.5)); }

Masses rescaled_masses(const std::vector<Big>& log_a, const std::vector<Big>& log_d, const Big& b, const Big& log_r) {
  const std::size_t K = log_a.size();
  std::vector<Big> e(K);
  for (std::size_t k = 0; k < K; ++k) e[k] = log_a[k] + b * exp(2 * log_d[k]);
  Big top = e[0];
  for (const auto& v : e) top = v > top ? v : top;
  Big total = 0;
  for (const auto& v : e) total += exp(v - top);
  Masses m{0, 0, 0};
  for (std::size_t k = 0; k < K; ++k) {
    const double mass = static_cast<double>(exp(e[k] - top) / total);
    const Big u = exp(log_d[k] - log_r);
    if (u < 0.5) m.zero += mass;
    if (abs(u - 1) < 0.5) {
      m.plus += mass / 2;
      m.minus += mass / 2;
    }
  }
  return m;
}

}  // namespace oracle

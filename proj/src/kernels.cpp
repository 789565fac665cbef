#include "dbn/kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>

namespace dbn::kernels {

namespace {
std::atomic<Exec> g_exec{Exec::Parallel};
std::atomic<int> g_workers{0};

constexpr std::size_t kNodeBlock = 16;
constexpr std::uint64_t kConfigBlock = 1024;
constexpr std::size_t kRowBlock = 64;

// Threshold below which the OpenMP version runs inline.
constexpr std::size_t kMinParallel = 2;
}  // namespace

void set_default_exec(Exec e) { g_exec = e; }
Exec default_exec() { return g_exec; }

void set_workers(int n) {
  if (n < 1) throw std::invalid_argument("workers must be >= 1");
  g_workers = n;
  omp_set_num_threads(n);
}

int workers() { return g_workers > 0 ? g_workers.load() : omp_get_max_threads(); }

// ---------------------------------------------------------------------------

namespace {

void node_range(std::size_t lo, std::size_t hi, const std::vector<Real>& t, const std::vector<Real>& g,
                const std::vector<Real>& w, const std::vector<Real>& wc, const Complex& z, NodeSums& acc) {
  const double y = std::abs(to_double(z.im));
  for (std::size_t k = lo; k < hi; ++k) {
    Complex s, c;
    sincos(z * t[k], s, c);
    const Complex fv = c * g[k];
    const Complex dv = -(s * (t[k] * g[k]));
    acc.f_hi += fv * w[k];
    acc.d_hi += dv * w[k];
    if (k % 2 == 0) {
      acc.f_lo += fv * wc[k / 2];
      acc.d_lo += dv * wc[k / 2];
    }
    const double tk = to_double(t[k]);
    acc.magnitude += std::abs(to_double(w[k]) * to_double(g[k])) * std::cosh(y * tk) * (1.0 + tk);
  }
}

}  // namespace

NodeSums cosine_node_sums(const std::vector<Real>& t, const std::vector<Real>& g, const std::vector<Real>& w,
                          const std::vector<Real>& w_coarse, const Complex& z, Exec e) {
  const std::size_t n = t.size();
  NodeSums out;
  const std::size_t blocks = (n + kNodeBlock - 1) / kNodeBlock;
  if (e == Exec::Serial || blocks < kMinParallel) {
    node_range(0, n, t, g, w, w_coarse, z, out);
    return out;
  }
  std::vector<NodeSums> partial(blocks);
  // Real temporaries take the ambient default precision, which is only read here.
#pragma omp parallel for schedule(static)
  for (std::size_t b = 0; b < blocks; ++b) {
    node_range(b * kNodeBlock, std::min(n, (b + 1) * kNodeBlock), t, g, w, w_coarse, z, partial[b]);
  }
  for (const auto& p : partial) {
    out.f_hi += p.f_hi;
    out.f_lo += p.f_lo;
    out.d_hi += p.d_hi;
    out.d_lo += p.d_lo;
    out.magnitude += p.magnitude;
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

void config_range(std::uint64_t lo, std::uint64_t hi, int n, const std::vector<double>& J, double beta,
                  double shift, std::vector<double>& acc) {
  std::vector<int> x(n);
  for (std::uint64_t c = lo; c < hi; ++c) {
    int m = 0;
    for (int i = 0; i < n; ++i) {
      x[i] = ((c >> i) & 1u) ? 1 : -1;
      m += x[i];
    }
    double e = 0;
    for (int i = 0; i < n; ++i) {
      const double* row = &J[static_cast<std::size_t>(i) * n];
      double r = 0;
      for (int j = 0; j < n; ++j) {
        if (j != i) r += row[j] * x[j];
      }
      e += x[i] * r;
    }
    acc[m + n] += std::exp(beta * e - shift);
  }
}

}  // namespace

std::vector<double> ising_magnetization_weights(int n, const std::vector<double>& J, double beta, double shift,
                                                Exec e) {
  if (n < 1 || n > 30) throw std::invalid_argument("ising enumeration needs 1 <= n <= 30");
  if (J.size() != static_cast<std::size_t>(n) * n) throw std::invalid_argument("J must be n*n");
  const std::uint64_t total = std::uint64_t{1} << n;
  std::vector<double> out(2 * n + 1, 0.0);
  const std::uint64_t blocks = (total + kConfigBlock - 1) / kConfigBlock;
  if (e == Exec::Serial || blocks < kMinParallel) {
    config_range(0, total, n, J, beta, shift, out);
    return out;
  }
  std::vector<std::vector<double>> partial(blocks, std::vector<double>(2 * n + 1, 0.0));
#pragma omp parallel for schedule(static)
  for (std::uint64_t b = 0; b < blocks; ++b) {
    config_range(b * kConfigBlock, std::min(total, (b + 1) * kConfigBlock), n, J, beta, shift, partial[b]);
  }
  for (const auto& p : partial) {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += p[i];
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

double velocity_at(const std::vector<double>& x, std::size_t k) {
  double s = 0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (j != k) s += 1.0 / (x[k] - x[j]);
  }
  return 2.0 * s;
}

}  // namespace

std::vector<double> pair_velocities(const std::vector<double>& x, Exec e) {
  const std::size_t n = x.size();
  std::vector<double> v(n);
  if (e == Exec::Serial || n < kRowBlock * kMinParallel) {
    for (std::size_t k = 0; k < n; ++k) v[k] = velocity_at(x, k);
    return v;
  }
  // Rows are independent; each output element has a single writer.
#pragma omp parallel for schedule(static)
  for (std::size_t k = 0; k < n; ++k) v[k] = velocity_at(x, k);
  return v;
}

// ---------------------------------------------------------------------------

namespace {

double lehmer_one(const std::vector<double>& x, int k, double radius) {
  const int n = static_cast<int>(x.size());
  if (k < 1 || k + 1 > n) throw std::out_of_range("lehmer_g: k and k+1 must index the table");
  const double xk = x[k - 1], xk1 = x[k];
  double s = 0;
  for (int j = 1; j <= n; ++j) {
    const double xj = x[j - 1];
    if (j != k && j != k + 1 && std::abs(xj - xk) <= radius) {
      s += 1.0 / ((xk - xj) * (xk - xj)) + 1.0 / ((xk1 - xj) * (xk1 - xj));
    }
    const double xr = -xj;  // reflected ordinate x_{-j}
    if (std::abs(xr - xk) <= radius) {
      s += 1.0 / ((xk - xr) * (xk - xr)) + 1.0 / ((xk1 - xr) * (xk1 - xr));
    }
  }
  return s;
}

}  // namespace

std::vector<double> lehmer_g(const std::vector<double>& x, const std::vector<int>& ks, double radius, Exec e) {
  std::vector<double> out(ks.size());
  if (e == Exec::Serial || ks.size() < kMinParallel) {
    for (std::size_t i = 0; i < ks.size(); ++i) out[i] = lehmer_one(x, ks[i], radius);
    return out;
  }
  // Validate up front so no exception escapes the parallel region.
  for (int k : ks) {
    if (k < 1 || k + 1 > static_cast<int>(x.size())) throw std::out_of_range("lehmer_g: k and k+1 must index the table");
  }
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < ks.size(); ++i) out[i] = lehmer_one(x, ks[i], radius);
  return out;
}

}  // namespace dbn::kernels

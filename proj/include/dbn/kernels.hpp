#pragma once

#include "dbn/complex.hpp"

#include <cstdint>
#include <vector>

// Data-parallel inner loops. Each kernel has a serial reference and an
// OpenMP version; the OpenMP version splits work into fixed blocks and
// combines partial results in block order, so its output does not depend
// on the thread count.
namespace dbn::kernels {

enum class Exec { Serial, Parallel };

/// Process-wide default used by library call sites.
void set_default_exec(Exec e);
Exec default_exec();
/// Worker count for Parallel (>= 1). Applied through omp_set_num_threads.
void set_workers(int n);
int workers();

// ---- Clenshaw-Curtis node sums for the transform quadrature ---------------

struct NodeSums {
  Complex f_hi, f_lo;  // sum w_k g_k cos(z t_k) over the full and embedded rules
  Complex d_hi, d_lo;  // sum w_k (-t_k g_k sin(z t_k))
  double magnitude = 0.0;  // sum |w_k g_k| cosh(|Im z| t_k) (1 + t_k), for rounding bounds
};

/// t, g, w of equal length n+1; coarse weights apply to even indices.
NodeSums cosine_node_sums(const std::vector<Real>& t, const std::vector<Real>& g, const std::vector<Real>& w,
                          const std::vector<Real>& w_coarse, const Complex& z, Exec e);

// ---- Ising enumeration ----------------------------------------------------

/// Sum over spin configurations x in {-1,1}^n of exp(beta sum_{i != j} J_ij x_i x_j - shift),
/// bucketed by magnetization m = sum x_i; index m + n, size 2n+1.
/// `J` is row-major n*n. `shift` keeps the exponentials in range.
std::vector<double> ising_magnetization_weights(int n, const std::vector<double>& J, double beta, double shift,
                                                Exec e);

// ---- Zero dynamics --------------------------------------------------------

/// v_k = 2 sum_{j != k} 1/(x_k - x_j).
std::vector<double> pair_velocities(const std::vector<double>& x, Exec e);

// ---- Lehmer sums ----------------------------------------------------------

/// g_k for each requested 1-based k over the reflected ordinate set
/// {+-x_j}, excluding j = k, k+1, restricted to |x_j' - x_k| <= radius.
std::vector<double> lehmer_g(const std::vector<double>& x, const std::vector<int>& ks, double radius, Exec e);

}  // namespace dbn::kernels

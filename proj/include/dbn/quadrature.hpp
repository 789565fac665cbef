#pragma once

#include "dbn/precision.hpp"

#include <memory>
#include <vector>

namespace dbn {

/// Clenshaw-Curtis rule on [-1, 1] with N+1 nodes plus the embedded N/2 rule
/// on every second node. Nodes are ordered from -1 to 1.
struct CCRule {
  unsigned n = 0;
  unsigned digits = 0;
  std::vector<Real> nodes;
  std::vector<Real> weights;        // full rule, size n+1
  std::vector<Real> coarse_weights;  // embedded rule on even-indexed nodes, size n/2+1
};

/// Cached rule for the current default precision. n must be even and >= 4.
std::shared_ptr<const CCRule> cc_rule(unsigned n, unsigned digits);

}  // namespace dbn

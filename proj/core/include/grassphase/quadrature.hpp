#pragma once

#include <span>
#include <vector>

namespace gphase {

/// Gauss-Legendre rule mapped to [0, 1].
struct GaussLegendre {
  std::vector<double> nodes;    // ascending
  std::vector<double> weights;  // sum to 1
};

/// Nodes from Newton iteration on P_order; throws DomainError for order < 1.
GaussLegendre gauss_legendre_unit(int order);

/// Pairwise (cascade) summation in index order; bit-reproducible.
double pairwise_sum(std::span<const double> values);

}  // namespace gphase

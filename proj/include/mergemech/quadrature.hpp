#pragma once

#include <vector>

#include "mergemech/model.hpp"

namespace mergemech {

/// Fixed-node quadrature rule on the unit interval, composed with each
/// distribution's quantile function to realize one-dimensional expectations.
struct QuadratureSpec {
  int nodes = 32;  // in [2, 64] for practical use; weights sum to 1
};

struct UnitRule {
  std::vector<double> u;  // nodes in (0, 1)
  std::vector<double> w;  // positive weights summing to 1
};

/// Composite two-point Gauss-Legendre panels for even node counts (robust on
/// kinked integrands); plain Gauss-Legendre for odd counts.
UnitRule build_unit_rule(int nodes);

/// Quadrature view of one item's ad-contribution distribution G_i:
/// nodes are quantile-mapped contribution values, sorted ascending.
class ContributionQuadrature {
 public:
  ContributionQuadrature() = default;
  ContributionQuadrature(const ItemParams& item, const UnitRule& rule);

  /// E[h(a_i)] for h given as values at the nodes is dot(weights, values);
  /// the common case E[max(a_i, c)] is evaluated in O(log Q) from prefix sums.
  double expected_max_with(double c) const;

  /// E[a_i] under the rule.
  double mean() const { return mean_; }

  const std::vector<double>& values() const { return values_; }
  const std::vector<double>& weights() const { return weights_; }

 private:
  std::vector<double> values_;   // ascending
  std::vector<double> weights_;  // matching order
  std::vector<double> cum_w_;    // cum_w_[j] = sum of weights_[0..j)
  std::vector<double> cum_wv_;   // cum_wv_[j] = sum of weights_*values_ [0..j)
  double mean_ = 0.0;
};

}  // namespace mergemech

#pragma once

#include <cstdint>

#include "mergemech/estimate.hpp"
#include "mergemech/model.hpp"
#include "mergemech/payments.hpp"
#include "mergemech/quadrature.hpp"

namespace mergemech {

/// Monte Carlo of the realized objective (virtual-value contributions of
/// displayed ads plus experience of displayed organics) under the mechanism.
ObjectiveEstimate mc_objective(const MechanismHandle& m, const Instance& inst, long samples,
                               std::uint64_t seed);

struct RevenueUeEstimate {
  ObjectiveEstimate rev;          // payment path: sum p_i x_i ctr_ad
  ObjectiveEstimate rev_virtual;  // virtual-value path: sum phi_i(b_i) x_i ctr_ad
  ObjectiveEstimate ue;           // sum x_i ue_ad + y_i ue_org
  ObjectiveEstimate rev_gap;      // paired per-sample difference rev - rev_virtual
};

/// Revenue estimated both ways on the same sample stream; for an IC mechanism
/// the two must agree (the gap is the built-in equivalence check).
RevenueUeEstimate mc_revenue_ue(const MechanismHandle& m, const Instance& inst, long samples,
                                std::uint64_t seed);

/// E[top-k of {k largest experience values} u {all ad contributions}] —
/// an upper bound on the objective of any feasible IC mechanism.
ObjectiveEstimate upper_bound_topk(const Instance& inst, long samples, std::uint64_t seed);

/// Exact optimal objective for 3 items / 2 slots: evaluates the nested
/// expectation E[max{o1+o2, E[max{o1+max(a2,a3), E[top2(a)]}]}] by three-level
/// quadrature for each of the 6 item orderings and returns the maximum.
double oracle_two_of_three(const Instance& inst, const QuadratureSpec& quad);

/// Exact reduced fraction (num/den, den > 0).
struct Rational {
  long long num = 0;
  long long den = 1;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  bool operator==(const Rational&) const = default;
};

/// num >= a/b in exact integer arithmetic.
bool rational_at_least(const Rational& r, long long a, long long b);

/// C(n-k, k) / C(n, k), exact; requires 2k <= n and n <= 64. k = 0 gives 1.
Rational combinatorial_ratio(int n, int k);

/// Minimal n = ceil(k^2/eps + k) such that the combinatorial ratio is at
/// least 1 - eps. Requires 0 < eps < 1.
int near_optimality_threshold(int k, double eps);

struct TailRatioReport {
  bool ok = true;
  double worst_margin = 0.0;  // min over the grid of LHS - RHS
};

/// Checks, on x in {j/(x_grid+1)}, that the censored binomial tail ratio
///   [1 - sum_{i=1..l} C(n-k, l-i) x^{(n-k)-(l-i)} (1-x)^{l-i}]
///   / [1 - sum_{i=1..l} C(n, l-i) x^{n-(l-i)} (1-x)^{l-i}]
/// dominates C(n-k, l) / C(n, l). Requires 1 <= l <= k and 2k <= n.
TailRatioReport tail_ratio_check(int n, int k, int l, int x_grid);

}  // namespace mergemech

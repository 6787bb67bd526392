#pragma once

#include <span>
#include <vector>

#include "mergemech/estimate.hpp"
#include "mergemech/model.hpp"
#include "mergemech/quadrature.hpp"

namespace mergemech {

/// Ordered flexible set (i_1, ..., i_k): these items may appear in either
/// form, decided in reverse order; all other items are ad-only. Length is
/// exactly k, indices distinct.
struct ChangeConfig {
  std::vector<int> ordered_set;
};

void validate_change_config(const ChangeConfig& cfg, int n, int k);

/// Evaluates the ordered-set recursion for one config:
///   R_t   = sum_{j<t} o_{i_j} + top-(k-t) of {a_i : i not in prefix_t}
///   w_t   = E over a_{i_t} of [R_{t-1} + max(o_{i_{t-1}}, w_{t-1})] - R_t
///           (for t = 1: E over a_{i_1} of top-k of all a) - R_1
///   s*    = first t from k down to 1 with o_{i_t} >= w_t, else 0.
/// Expectations use the fixed-node quadrature composed with each item's
/// contribution quantile. w_t never reads the realized contributions of the
/// first t items of the set. Cost grows as Q^(t-1); construction rejects
/// k*log2(Q) beyond a budget.
class ChangeEvaluator {
 public:
  ChangeEvaluator(const Instance& inst, ChangeConfig cfg, const QuadratureSpec& quad);

  double residual(int t, const ContributionProfile& c) const;
  double marginal_w(int t, const ContributionProfile& c) const;
  int s_star(const ContributionProfile& c) const;
  Allocation allocate(const ContributionProfile& c) const;

  /// max(sum_I o, w_k + sum over the first k-1 of I of o) for one realized
  /// draw of the contributions outside the set (prefix entries are ignored).
  double formula_value(std::span<const double> a_all) const;

  const ChangeConfig& config() const { return cfg_; }

 private:
  double w_rec(int t, std::vector<double>& pool) const;
  std::vector<double> pool_excluding_prefix(int t, std::span<const double> a_all) const;

  const Instance* inst_;
  ChangeConfig cfg_;
  int k_;
  std::vector<ContributionQuadrature> pos_quad_;  // per position t-1
  std::vector<double> o_of_;                      // o_{i_t} at index t-1
  std::vector<double> o_prefix_;                  // o_prefix_[t] = sum_{j<=t} o_{i_j}
  std::vector<char> in_set_;
};

/// R_t per the recursion; pure arithmetic on the realized profile.
double residual_R(const ChangeConfig& cfg, int t, const ContributionProfile& c, int k);

/// w_{i_t}; independent of the realized contributions of the first t set items.
double marginal_w(const ChangeConfig& cfg, int t, const ContributionProfile& c,
                  const Instance& inst, const QuadratureSpec& quad);

/// Reverse scan threshold; 0 when no set item prefers organic form.
int threshold_s_star(const ChangeConfig& cfg, const ContributionProfile& c, const Instance& inst,
                     const QuadratureSpec& quad);

/// Organic for the first s* set items; top-(k-s*) strict-threshold ad auction
/// over everything else. Feasible by construction.
Allocation gchange_i_allocate(const ChangeConfig& cfg, const ContributionProfile& c,
                              const Instance& inst, const QuadratureSpec& quad);

/// Monte Carlo over contributions outside the set, w_k by quadrature per
/// sample (formula path). Cross-checkable against simulating the allocation.
ObjectiveEstimate gchange_i_objective(const ChangeConfig& cfg, const Instance& inst,
                                      const Estimator& est, const QuadratureSpec& quad);

/// Argmax over all ordered k-subsets with common random numbers; ties resolve
/// to the lexicographically least tuple. Guard: n!/(n-k)! <= 1e4.
ChangeConfig gchange_select(const Instance& inst, const Estimator& est,
                            const QuadratureSpec& quad);

Allocation gchange_allocate(const Instance& inst, const BidProfile& bids, const ChangeConfig& cfg,
                            const QuadratureSpec& quad);

}  // namespace mergemech

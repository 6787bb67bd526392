#pragma once

#include <vector>

#include "mergemech/estimate.hpp"
#include "mergemech/model.hpp"

namespace mergemech {

/// Candidate set for the fixed-form mechanism: items in organic_set may only
/// be displayed organically, all others only as ads. |organic_set| <= k.
struct FixConfig {
  std::vector<int> organic_set;  // sorted, distinct, within [0, n)
};

void validate_fix_config(const FixConfig& cfg, int n, int k);

/// Display rule: pool L = {o_i : i in I} u {a_i : i not in I}; the threshold
/// is the (k+1)-th largest of L (zero-padded), and an item is displayed iff
/// its pool entry strictly exceeds the threshold. Always feasible.
Allocation gfix_i_allocate(const FixConfig& cfg, const ContributionProfile& c, int k);

/// Monte Carlo estimate of the mechanism's expected objective, i.e. the sum
/// of pool entries strictly above the display threshold (equals E[top-k of L]
/// up to ties whenever n > k). Deterministic given the estimator seed.
ObjectiveEstimate gfix_i_objective(const FixConfig& cfg, const Instance& inst,
                                   const Estimator& est);

/// Argmax of gfix_i_objective over all I with |I| <= k, sharing one common
/// random number set across candidates. Ties break toward smaller |I|, then
/// lexicographically. Guard: sum_j<=k C(n,j) <= 1e6 candidates.
FixConfig gfix_select(const Instance& inst, const Estimator& est);

/// contribution(inst, bids) followed by gfix_i_allocate.
Allocation gfix_allocate(const Instance& inst, const BidProfile& bids, const FixConfig& cfg);

}  // namespace mergemech

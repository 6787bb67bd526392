#pragma once

#include <span>
#include <string>
#include <vector>

#include "mergemech/distribution.hpp"

namespace mergemech {

/// Per-item parameters. Ad form has strictly lower CTR and weakly lower
/// experience value than organic form.
struct ItemParams {
  double ctr_ad = 0.5;   // in (0, 1), strictly below ctr_org
  double ctr_org = 0.9;  // in (0, 1]
  double ue_ad = 0.0;    // >= 0, <= ue_org
  double ue_org = 0.0;
  ValueDistribution dist;
};

/// The full problem: slot count plus ordered item parameters.
struct Instance {
  std::vector<ItemParams> items;
  int slots = 1;

  int n() const { return static_cast<int>(items.size()); }
  int k() const { return slots; }
};

/// Throws ConfigError when an invariant is violated (named in the message).
void validate_instance(const Instance& inst);

/// One bid per item; each bid must lie in the item's support.
using BidProfile = std::vector<double>;

void validate_bids(const Instance& inst, const BidProfile& bids);

/// Realized contributions: a[i] = phi_i(b_i) * ctr_ad + ue_ad (may be
/// negative), o[i] = ue_org (bid-independent).
struct ContributionProfile {
  std::vector<double> a;
  std::vector<double> o;

  int n() const { return static_cast<int>(a.size()); }
};

ContributionProfile contribution(const Instance& inst, const BidProfile& bids);

/// Ad contribution of a single item at a given bid.
double ad_contribution(const ItemParams& item, double bid);

/// Binary display decisions; x = ad form, y = organic form.
struct Allocation {
  std::vector<int> x;
  std::vector<int> y;
};

struct FeasibilityResult {
  bool ok = true;
  std::string violation;  // which constraint failed
  int index = -1;         // offending item for the per-item constraint
};

FeasibilityResult validate_allocation(const Allocation& alloc, int k);

/// Allocation plus per-click payments (0 for undisplayed and organic items).
struct Outcome {
  Allocation alloc;
  std::vector<double> payments;
};

/// Sum of the k largest elements; multisets shorter than k are zero-padded.
double top_k_sum(std::span<const double> values, int k);

/// k-th largest element under the same zero-padding semantics: returns the
/// k-th largest when the multiset has at least k elements, and 0 otherwise,
/// so that top_k_sum(S, k+1) - top_k_sum(S, k) == kth_largest(S, k+1).
double kth_largest(std::span<const double> values, int k);

/// sum_i (a_i x_i + o_i y_i). Rejects infeasible allocations.
double objective_of(const Allocation& alloc, const ContributionProfile& c, int k);

}  // namespace mergemech

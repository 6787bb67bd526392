#pragma once

#include <functional>
#include <string>

#include "mergemech/model.hpp"

namespace mergemech {

/// Uniform surface over allocation rules. The rule must be deterministic and
/// total on valid inputs. payment_override, when set, replaces the critical-
/// bid payment (used to audit deliberately broken payment rules).
struct MechanismHandle {
  std::string label;
  std::function<Allocation(const Instance&, const BidProfile&)> rule;
  std::function<double(const Instance&, const BidProfile&, const Allocation&, int)>
      payment_override;  // per displayed-ad item; null = critical bid
};

struct CriticalBidOptions {
  double tol_factor = 1e-9;       // tolerance = tol_factor * (hi - lo)
  bool detect_non_monotone = true;  // probe the top of the support
};

/// Infimum bid at which item i's ad form is displayed, by bisection over
/// [lo, hi] holding the other bids fixed. Requires the item to be displayed
/// at its realized bid. Throws NonMonotoneAllocation when the indicator is
/// observed on at the realized bid but off at the top of the support.
double critical_bid(const MechanismHandle& m, const Instance& inst, int item,
                    const BidProfile& bids, const CriticalBidOptions& opts = {});

/// Allocation plus payments: critical bid for displayed ads, 0 otherwise.
Outcome outcome(const MechanismHandle& m, const Instance& inst, const BidProfile& bids);

/// |P_i - (b_i X_i(b_i) - integral of X_i over [0, b_i])| where X_i is the
/// expected CTR as a function of the owner's own bid. The integrand is a step
/// function; jumps between grid points are localized by bisection and the
/// integral assembled exactly from the pieces. Requires grid >= 100.
double payment_identity_residual(const MechanismHandle& m, const Instance& inst, int item,
                                 const BidProfile& bids, int grid);

}  // namespace mergemech

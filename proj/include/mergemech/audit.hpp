#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mergemech/model.hpp"
#include "mergemech/payments.hpp"

namespace mergemech {

struct AuditViolation {
  BidProfile profile;  // witnessing bid profile
  int item = -1;
  double misreport = 0.0;  // offending own-bid (IC / stability / monotonicity)
  double magnitude = 0.0;  // utility gain, CTR decrease, payment excess, ...
};

/// Violations are data, never exceptions; an empty list means the property
/// held at its tolerance on every trial. Deterministic per seed.
struct AuditReport {
  std::string mechanism;
  std::string property;
  long trials = 0;
  std::vector<AuditViolation> violations;  // sorted by magnitude, descending
  double max_violation = 0.0;
};

/// Items to audit; empty means all. Used to split flexible-set items from
/// outside items when gating.
using ItemFilter = std::vector<int>;

/// Truthful utility vs the best utility over a quantile-spaced misreport grid
/// (with bisection refinement around detected allocation jumps). Violation
/// iff the best misreport beats truth by more than 1e-7.
AuditReport audit_ic(const MechanismHandle& m, const Instance& inst, long profile_samples,
                     int misreport_grid, std::uint64_t seed, const ItemFilter& items = {});

/// p_i <= b_i + 1e-9 on sampled profiles.
AuditReport audit_ir(const MechanismHandle& m, const Instance& inst, long samples,
                     std::uint64_t seed, const ItemFilter& items = {});

/// y_i constant over a grid of own bids, per sampled profile of other bids.
AuditReport audit_form_stability(const MechanismHandle& m, const Instance& inst,
                                 long profile_samples, int own_bid_grid, std::uint64_t seed,
                                 const ItemFilter& items = {});

/// Expected CTR X_i non-decreasing over an ascending own-bid grid; any
/// decrease beyond 1e-9 is a violation.
AuditReport audit_monotonicity(const MechanismHandle& m, const Instance& inst,
                               long profile_samples, int own_bid_grid, std::uint64_t seed,
                               const ItemFilter& items = {});

/// Feasibility constraints on every sampled profile.
AuditReport audit_feasibility(const MechanismHandle& m, const Instance& inst, long samples,
                              std::uint64_t seed);

/// One-paragraph human-readable summary.
std::string summarize(const AuditReport& report);

}  // namespace mergemech

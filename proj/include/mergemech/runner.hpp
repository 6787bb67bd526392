#pragma once

#include <string>

#include "mergemech/config.hpp"
#include "mergemech/payments.hpp"

namespace mergemech {

/// Resolves a mechanism spec to a handle, running the selector for gfix /
/// gchange (selection at cfg.effective_select_samples() with common random
/// numbers, seeded deterministically from cfg.seed).
MechanismHandle resolve_mechanism(const MechanismSpec& spec, const RunConfig& cfg);

/// One row per mechanism plus an upper-bound row. Columns:
/// mechanism,obj_mean,obj_se,rev_mean,ue_mean,upper_bound,ratio_vs_upper,samples,seed
std::string run_compare(const RunConfig& cfg);

struct AuditRun {
  std::string csv;  // mechanism,property,trials,violations,max_violation
  bool hard_gate_failed = false;
};

/// Property audits per mechanism. Flexible-set mechanisms report stability
/// and monotonicity separately for set and outside items; incentive audits
/// on them are published measurements, not gates.
AuditRun run_audit(const RunConfig& cfg);

/// Theorem-bound rows: n,k,bound_name,theoretical,empirical,pass.
/// Rows whose preconditions fail are marked skip.
std::string run_ratio(const RunConfig& cfg);

}  // namespace mergemech

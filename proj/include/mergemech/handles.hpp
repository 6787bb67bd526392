#pragma once

#include "mergemech/mechanism_change.hpp"
#include "mergemech/mechanism_fix.hpp"
#include "mergemech/payments.hpp"

namespace mergemech {

/// Top-k ad auction (fixed-form mechanism with an empty organic set).
MechanismHandle pure_ad_handle();

/// Fixed-form mechanism with a given organic set.
MechanismHandle gfix_i_handle(FixConfig cfg, std::string label = "gfix_i");

/// Ordered flexible-set mechanism. The recursion state is precomputed once
/// and bound to this instance; pass the same instance to every call.
MechanismHandle gchange_i_handle(const Instance& inst, ChangeConfig cfg,
                                 const QuadratureSpec& quad, std::string label = "gchange_i");

}  // namespace mergemech

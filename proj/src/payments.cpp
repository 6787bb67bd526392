#include "mergemech/payments.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "mergemech/errors.hpp"

namespace mergemech {

namespace {

// Expected CTR of item i at own bid t, others fixed.
double expected_ctr_at(const MechanismHandle& m, const Instance& inst, int item, BidProfile bids,
                       double t) {
  bids[item] = t;
  Allocation alloc = m.rule(inst, bids);
  return alloc.x[item] * inst.items[item].ctr_ad + alloc.y[item] * inst.items[item].ctr_org;
}

bool displays_ad_at(const MechanismHandle& m, const Instance& inst, int item, BidProfile bids,
                    double t) {
  bids[item] = t;
  return m.rule(inst, bids).x[item] == 1;
}

}  // namespace

double critical_bid(const MechanismHandle& m, const Instance& inst, int item,
                    const BidProfile& bids, const CriticalBidOptions& opts) {
  const ValueDistribution& d = inst.items[item].dist;
  if (!displays_ad_at(m, inst, item, bids, bids[item]))
    throw std::invalid_argument("critical_bid: item not displayed at its realized bid");
  if (displays_ad_at(m, inst, item, bids, d.lo)) return d.lo;
  if (opts.detect_non_monotone && !displays_ad_at(m, inst, item, bids, d.hi))
    throw NonMonotoneAllocation(item, bids[item], d.hi);

  double lo = d.lo;          // does not display
  double hi = bids[item];    // displays
  const double tol = opts.tol_factor * (d.hi - d.lo);
  for (int it = 0; it < 200 && hi - lo > tol; ++it) {
    double mid = 0.5 * (lo + hi);
    if (displays_ad_at(m, inst, item, bids, mid))
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

Outcome outcome(const MechanismHandle& m, const Instance& inst, const BidProfile& bids) {
  validate_bids(inst, bids);
  Outcome out;
  out.alloc = m.rule(inst, bids);
  out.payments.assign(inst.n(), 0.0);
  for (int i = 0; i < inst.n(); ++i) {
    if (out.alloc.x[i] != 1) continue;
    out.payments[i] = m.payment_override ? m.payment_override(inst, bids, out.alloc, i)
                                         : critical_bid(m, inst, i, bids);
  }
  return out;
}

double payment_identity_residual(const MechanismHandle& m, const Instance& inst, int item,
                                 const BidProfile& bids, int grid) {
  if (grid < 100) throw std::invalid_argument("payment_identity_residual: grid must be >= 100");
  const ValueDistribution& d = inst.items[item].dist;
  const double b = bids[item];

  // Sample X_i on the grid, then localize each jump by bisection so the step
  // integral is assembled exactly instead of trapezoided across a jump.
  std::vector<double> ts(grid), xs(grid);
  for (int j = 0; j < grid; ++j) {
    ts[j] = d.lo + (b - d.lo) * j / (grid - 1);
    xs[j] = expected_ctr_at(m, inst, item, bids, ts[j]);
  }
  std::vector<double> breaks;
  for (int j = 0; j + 1 < grid; ++j) {
    if (xs[j] == xs[j + 1]) continue;
    double lo = ts[j], hi = ts[j + 1];
    double x_lo = xs[j];
    for (int it = 0; it < 60 && hi - lo > 1e-13 * (d.hi - d.lo); ++it) {
      double mid = 0.5 * (lo + hi);
      if (expected_ctr_at(m, inst, item, bids, mid) == x_lo)
        lo = mid;
      else
        hi = mid;
    }
    breaks.push_back(0.5 * (lo + hi));
  }

  // Piecewise-constant integral over [0, b]; below the support the rule is
  // evaluated at the clamped bid lo (exact for the lo = 0 case).
  double integral = d.lo > 0.0 ? d.lo * expected_ctr_at(m, inst, item, bids, d.lo) : 0.0;
  double seg_lo = d.lo;
  breaks.push_back(b);
  for (double seg_hi : breaks) {
    if (seg_hi > seg_lo) {
      double mid_val = expected_ctr_at(m, inst, item, bids, 0.5 * (seg_lo + seg_hi));
      integral += (seg_hi - seg_lo) * mid_val;
    }
    seg_lo = seg_hi;
  }

  Outcome out = outcome(m, inst, bids);
  double expected_payment = out.payments[item] * out.alloc.x[item] * inst.items[item].ctr_ad;
  double x_at_b = expected_ctr_at(m, inst, item, bids, b);
  return std::abs(expected_payment - (b * x_at_b - integral));
}

}  // namespace mergemech

#include "mergemech/audit.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mergemech/rng.hpp"

namespace mergemech {

namespace {

constexpr double kIcTol = 1e-7;
constexpr double kIrTol = 1e-9;
constexpr double kMonoTol = 1e-9;

std::vector<int> audited_items(const Instance& inst, const ItemFilter& items) {
  if (!items.empty()) return items;
  std::vector<int> all(inst.n());
  for (int i = 0; i < inst.n(); ++i) all[i] = i;
  return all;
}

BidProfile draw_profile(const Instance& inst, Rng& rng) {
  BidProfile bids(inst.n());
  for (int i = 0; i < inst.n(); ++i) bids[i] = quantile(inst.items[i].dist, rng.next_unit());
  return bids;
}

void finalize(AuditReport& report) {
  std::stable_sort(report.violations.begin(), report.violations.end(),
                   [](const AuditViolation& a, const AuditViolation& b) {
                     return a.magnitude > b.magnitude;
                   });
  report.max_violation = report.violations.empty() ? 0.0 : report.violations.front().magnitude;
}

// Display state of one item over its own-bid grid.
struct OwnBidSweep {
  std::vector<double> bids;
  std::vector<int> x, y;
};

OwnBidSweep sweep_own_bid(const MechanismHandle& m, const Instance& inst, int item,
                          BidProfile bids, int grid) {
  OwnBidSweep s;
  const ValueDistribution& d = inst.items[item].dist;
  s.bids.resize(grid);
  s.x.resize(grid);
  s.y.resize(grid);
  for (int j = 0; j < grid; ++j) {
    double u = static_cast<double>(j) / (grid - 1);
    s.bids[j] = quantile(d, u);
    bids[item] = s.bids[j];
    Allocation alloc = m.rule(inst, bids);
    s.x[j] = alloc.x[item];
    s.y[j] = alloc.y[item];
  }
  return s;
}

}  // namespace

AuditReport audit_ic(const MechanismHandle& m, const Instance& inst, long profile_samples,
                     int misreport_grid, std::uint64_t seed, const ItemFilter& items) {
  AuditReport report{m.label, "ic"};
  Rng rng(seed);
  const std::vector<int> audit_set = audited_items(inst, items);
  const CriticalBidOptions bid_opts{1e-9, false};

  for (long s = 0; s < profile_samples; ++s) {
    BidProfile bids = draw_profile(inst, rng);
    for (int i : audit_set) {
      const ItemParams& it = inst.items[i];
      const double b_true = bids[i];

      auto payment_at = [&](const BidProfile& prof, const Allocation& alloc) {
        if (alloc.x[i] != 1) return 0.0;
        if (m.payment_override) return m.payment_override(inst, prof, alloc, i);
        return critical_bid(m, inst, i, prof, bid_opts);
      };
      auto utility_at = [&](double b_report) {
        BidProfile prof = bids;
        prof[i] = b_report;
        Allocation alloc = m.rule(inst, prof);
        double ctr = alloc.x[i] * it.ctr_ad + alloc.y[i] * it.ctr_org;
        return b_true * ctr - payment_at(prof, alloc) * alloc.x[i] * it.ctr_ad;
      };

      const double u_truth = utility_at(b_true);

      // Quantile-spaced misreport grid, then bisection refinement around
      // every allocation jump so narrow display bands are not missed.
      OwnBidSweep sweep = sweep_own_bid(m, inst, i, bids, misreport_grid);
      double best = -std::numeric_limits<double>::infinity();
      double best_bid = b_true;
      auto consider = [&](double b_report) {
        double u = utility_at(b_report);
        if (u > best) {
          best = u;
          best_bid = b_report;
        }
      };
      for (double b : sweep.bids) consider(b);
      const double delta = 1e-9 * (it.dist.hi - it.dist.lo);
      for (int j = 0; j + 1 < misreport_grid; ++j) {
        if (sweep.x[j] == sweep.x[j + 1] && sweep.y[j] == sweep.y[j + 1]) continue;
        double lo = sweep.bids[j], hi = sweep.bids[j + 1];
        for (int itn = 0; itn < 50 && hi - lo > delta; ++itn) {
          double mid = 0.5 * (lo + hi);
          BidProfile prof = bids;
          prof[i] = mid;
          Allocation alloc = m.rule(inst, prof);
          if (alloc.x[i] == sweep.x[j] && alloc.y[i] == sweep.y[j])
            lo = mid;
          else
            hi = mid;
        }
        consider(std::max(it.dist.lo, lo - delta));
        consider(std::min(it.dist.hi, hi + delta));
      }

      double gain = best - u_truth;
      if (gain > kIcTol) report.violations.push_back({bids, i, best_bid, gain});
    }
  }
  report.trials = profile_samples * static_cast<long>(audit_set.size());
  finalize(report);
  return report;
}

AuditReport audit_ir(const MechanismHandle& m, const Instance& inst, long samples,
                     std::uint64_t seed, const ItemFilter& items) {
  AuditReport report{m.label, "ir"};
  Rng rng(seed);
  const std::vector<int> audit_set = audited_items(inst, items);
  const CriticalBidOptions bid_opts{1e-9, false};
  for (long s = 0; s < samples; ++s) {
    BidProfile bids = draw_profile(inst, rng);
    Allocation alloc = m.rule(inst, bids);
    for (int i : audit_set) {
      if (alloc.x[i] != 1) continue;
      double p = m.payment_override ? m.payment_override(inst, bids, alloc, i)
                                    : critical_bid(m, inst, i, bids, bid_opts);
      double excess = p - bids[i];
      if (excess > kIrTol) report.violations.push_back({bids, i, 0.0, excess});
    }
  }
  report.trials = samples * static_cast<long>(audit_set.size());
  finalize(report);
  return report;
}

AuditReport audit_form_stability(const MechanismHandle& m, const Instance& inst,
                                 long profile_samples, int own_bid_grid, std::uint64_t seed,
                                 const ItemFilter& items) {
  AuditReport report{m.label, "form_stability"};
  Rng rng(seed);
  const std::vector<int> audit_set = audited_items(inst, items);
  for (long s = 0; s < profile_samples; ++s) {
    BidProfile bids = draw_profile(inst, rng);
    for (int i : audit_set) {
      OwnBidSweep sweep = sweep_own_bid(m, inst, i, bids, own_bid_grid);
      for (int j = 1; j < own_bid_grid; ++j) {
        if (sweep.y[j] != sweep.y[0]) {
          report.violations.push_back({bids, i, sweep.bids[j], 1.0});
          break;
        }
      }
    }
  }
  report.trials = profile_samples * static_cast<long>(audit_set.size());
  finalize(report);
  return report;
}

AuditReport audit_monotonicity(const MechanismHandle& m, const Instance& inst,
                               long profile_samples, int own_bid_grid, std::uint64_t seed,
                               const ItemFilter& items) {
  AuditReport report{m.label, "monotonicity"};
  Rng rng(seed);
  const std::vector<int> audit_set = audited_items(inst, items);
  for (long s = 0; s < profile_samples; ++s) {
    BidProfile bids = draw_profile(inst, rng);
    for (int i : audit_set) {
      const ItemParams& it = inst.items[i];
      OwnBidSweep sweep = sweep_own_bid(m, inst, i, bids, own_bid_grid);
      double worst = 0.0, at_bid = 0.0;
      double prev = sweep.x[0] * it.ctr_ad + sweep.y[0] * it.ctr_org;
      for (int j = 1; j < own_bid_grid; ++j) {
        double cur = sweep.x[j] * it.ctr_ad + sweep.y[j] * it.ctr_org;
        if (prev - cur > worst) {
          worst = prev - cur;
          at_bid = sweep.bids[j];
        }
        prev = cur;
      }
      if (worst > kMonoTol) report.violations.push_back({bids, i, at_bid, worst});
    }
  }
  report.trials = profile_samples * static_cast<long>(audit_set.size());
  finalize(report);
  return report;
}

AuditReport audit_feasibility(const MechanismHandle& m, const Instance& inst, long samples,
                              std::uint64_t seed) {
  AuditReport report{m.label, "feasibility"};
  Rng rng(seed);
  for (long s = 0; s < samples; ++s) {
    BidProfile bids = draw_profile(inst, rng);
    Allocation alloc = m.rule(inst, bids);
    FeasibilityResult feas = validate_allocation(alloc, inst.k());
    if (!feas.ok) {
      int displayed = 0;
      for (std::size_t i = 0; i < alloc.x.size(); ++i) displayed += alloc.x[i] + alloc.y[i];
      double excess = feas.index >= 0 ? 1.0 : displayed - inst.k();
      report.violations.push_back({bids, feas.index, 0.0, excess});
    }
  }
  report.trials = samples;
  finalize(report);
  return report;
}

std::string summarize(const AuditReport& report) {
  std::ostringstream os;
  os << report.mechanism << " / " << report.property << ": " << report.trials << " trials, "
     << report.violations.size() << " violations";
  if (!report.violations.empty()) {
    const AuditViolation& v = report.violations.front();
    os << " (worst " << report.max_violation << " at item " << v.item << ")";
  }
  return os.str();
}

}  // namespace mergemech

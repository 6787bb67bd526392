#pragma once

#include <vector>

#include "mergemech/model.hpp"
#include "mergemech/rng.hpp"

namespace mergemech::testing {

/// Deterministic random instance with uniform priors on [0, B].
inline Instance random_uniform_instance(int n, int k, std::uint64_t seed) {
  Rng rng(seed);
  Instance inst;
  inst.slots = k;
  for (int i = 0; i < n; ++i) {
    ItemParams item;
    item.ctr_ad = 0.2 + 0.5 * rng.next_unit();
    item.ctr_org = std::min(1.0, item.ctr_ad + 0.1 + 0.25 * rng.next_unit());
    item.ue_ad = 0.2 * rng.next_unit();
    item.ue_org = item.ue_ad + 0.6 * rng.next_unit();
    item.dist = uniform_dist(0.0, 0.5 + 1.5 * rng.next_unit());
    inst.items.push_back(item);
  }
  return inst;
}

/// Same item parameters for every slot candidate (identical priors).
inline Instance identical_uniform_instance(int n, int k, double hi = 1.0, double ctr_ad = 0.5,
                                           double ue_ad = 0.05, double ue_org = 0.35) {
  Instance inst;
  inst.slots = k;
  ItemParams item;
  item.ctr_ad = ctr_ad;
  item.ctr_org = 0.9;
  item.ue_ad = ue_ad;
  item.ue_org = ue_org;
  item.dist = uniform_dist(0.0, hi);
  inst.items.assign(n, item);
  return inst;
}

inline BidProfile random_bids(const Instance& inst, Rng& rng) {
  BidProfile bids(inst.n());
  for (int i = 0; i < inst.n(); ++i) bids[i] = quantile(inst.items[i].dist, rng.next_unit());
  return bids;
}

/// Brute-force sum of the k largest after zero-padding (independent oracle).
inline double naive_top_k_sum(std::vector<double> values, int k) {
  while (static_cast<int>(values.size()) < k) values.push_back(0.0);
  std::sort(values.begin(), values.end(), std::greater<double>());
  double s = 0.0;
  for (int j = 0; j < k; ++j) s += values[j];
  return s;
}

}  // namespace mergemech::testing

#include "mergemech/model.hpp"

#include <algorithm>
#include <stdexcept>

#include "mergemech/errors.hpp"

namespace mergemech {

void validate_instance(const Instance& inst) {
  if (inst.items.empty()) throw ConfigError("instance: needs at least one item");
  if (inst.slots < 1) throw ConfigError("instance: slots must be >= 1");
  for (int i = 0; i < inst.n(); ++i) {
    const ItemParams& it = inst.items[i];
    std::string where = "item " + std::to_string(i) + ": ";
    if (!(it.ctr_ad > 0.0 && it.ctr_ad <= 1.0)) throw ConfigError(where + "ctr_ad must be in (0,1]");
    if (!(it.ctr_org > 0.0 && it.ctr_org <= 1.0))
      throw ConfigError(where + "ctr_org must be in (0,1]");
    if (!(it.ctr_ad < it.ctr_org)) throw ConfigError(where + "ctr_ad < ctr_org required");
    if (!(it.ue_ad >= 0.0)) throw ConfigError(where + "ue_ad must be >= 0");
    if (!(it.ue_ad <= it.ue_org)) throw ConfigError(where + "ue_ad <= ue_org required");
    if (!check_regularity(it.dist, 512).ok)
      throw ConfigError(where + "distribution is not regular");
  }
}

void validate_bids(const Instance& inst, const BidProfile& bids) {
  if (static_cast<int>(bids.size()) != inst.n())
    throw std::invalid_argument("bid profile length mismatch");
  for (int i = 0; i < inst.n(); ++i) {
    const ValueDistribution& d = inst.items[i].dist;
    if (bids[i] < d.lo || bids[i] > d.hi)
      throw std::domain_error("bid for item " + std::to_string(i) + " outside support");
  }
}

double ad_contribution(const ItemParams& item, double bid) {
  return virtual_value(item.dist, bid) * item.ctr_ad + item.ue_ad;
}

ContributionProfile contribution(const Instance& inst, const BidProfile& bids) {
  validate_bids(inst, bids);
  ContributionProfile c;
  c.a.reserve(inst.n());
  c.o.reserve(inst.n());
  for (int i = 0; i < inst.n(); ++i) {
    c.a.push_back(ad_contribution(inst.items[i], bids[i]));
    c.o.push_back(inst.items[i].ue_org);
  }
  return c;
}

FeasibilityResult validate_allocation(const Allocation& alloc, int k) {
  int total = 0;
  for (std::size_t i = 0; i < alloc.x.size(); ++i) {
    if (alloc.x[i] + alloc.y[i] > 1)
      return {false, "x_i + y_i <= 1", static_cast<int>(i)};
    total += alloc.x[i] + alloc.y[i];
  }
  if (total > k) return {false, "sum(x_i + y_i) <= k", -1};
  return {};
}

double top_k_sum(std::span<const double> values, int k) {
  if (k <= 0) return 0.0;
  const int m = static_cast<int>(values.size());
  if (m <= k) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;  // zero-padding adds nothing
  }
  std::vector<double> buf(values.begin(), values.end());
  std::nth_element(buf.begin(), buf.begin() + (k - 1), buf.end(), std::greater<double>());
  double s = 0.0;
  for (int j = 0; j < k; ++j) s += buf[j];
  return s;
}

double kth_largest(std::span<const double> values, int k) {
  if (k < 1) throw std::invalid_argument("kth_largest: k must be >= 1");
  const int m = static_cast<int>(values.size());
  if (m < k) return 0.0;  // padded slot
  std::vector<double> buf(values.begin(), values.end());
  std::nth_element(buf.begin(), buf.begin() + (k - 1), buf.end(), std::greater<double>());
  return buf[k - 1];
}

double objective_of(const Allocation& alloc, const ContributionProfile& c, int k) {
  if (alloc.x.size() != c.a.size() || alloc.y.size() != c.o.size())
    throw std::invalid_argument("objective_of: length mismatch");
  FeasibilityResult feas = validate_allocation(alloc, k);
  if (!feas.ok) throw std::invalid_argument("objective_of: infeasible allocation (" + feas.violation + ")");
  double s = 0.0;
  for (std::size_t i = 0; i < alloc.x.size(); ++i)
    s += c.a[i] * alloc.x[i] + c.o[i] * alloc.y[i];
  return s;
}

}  // namespace mergemech

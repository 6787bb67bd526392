#include "mergemech/mechanism_fix.hpp"

#include <algorithm>
#include <stdexcept>

#include "mergemech/errors.hpp"
#include "mergemech/rng.hpp"

namespace mergemech {

namespace {

// Pool entry per item: o_i inside I, a_i outside.
void build_pool(const FixConfig& cfg, const ContributionProfile& c, std::vector<double>& pool,
                std::vector<char>& in_set) {
  const int n = c.n();
  in_set.assign(n, 0);
  for (int i : cfg.organic_set) in_set[i] = 1;
  pool.resize(n);
  for (int i = 0; i < n; ++i) pool[i] = in_set[i] ? c.o[i] : c.a[i];
}

// Realized mechanism value: sum of pool entries strictly above the threshold.
double realized_value(std::span<const double> pool, int k) {
  double tau = kth_largest(pool, k + 1);
  double s = 0.0;
  for (double v : pool)
    if (v > tau) s += v;
  return s;
}

}  // namespace

void validate_fix_config(const FixConfig& cfg, int n, int k) {
  if (static_cast<int>(cfg.organic_set.size()) > k)
    throw std::invalid_argument("fix config: |I| must be <= k");
  int prev = -1;
  for (int i : cfg.organic_set) {
    if (i < 0 || i >= n) throw std::invalid_argument("fix config: index out of range");
    if (i <= prev) throw std::invalid_argument("fix config: indices must be sorted and distinct");
    prev = i;
  }
}

Allocation gfix_i_allocate(const FixConfig& cfg, const ContributionProfile& c, int k) {
  const int n = c.n();
  validate_fix_config(cfg, n, k);
  std::vector<double> pool;
  std::vector<char> in_set;
  build_pool(cfg, c, pool, in_set);
  double tau = kth_largest(pool, k + 1);

  Allocation alloc{std::vector<int>(n, 0), std::vector<int>(n, 0)};
  for (int i = 0; i < n; ++i) {
    if (in_set[i]) {
      if (c.o[i] > tau) alloc.y[i] = 1;
    } else {
      if (c.a[i] > tau) alloc.x[i] = 1;
    }
  }
  return alloc;
}

ObjectiveEstimate gfix_i_objective(const FixConfig& cfg, const Instance& inst,
                                   const Estimator& est) {
  const int n = inst.n();
  validate_fix_config(cfg, n, inst.k());
  if (est.samples < 1) throw std::invalid_argument("estimator: samples must be >= 1");

  std::vector<char> in_set(n, 0);
  for (int i : cfg.organic_set) in_set[i] = 1;

  Rng rng(est.seed);
  RunningStat stat;
  std::vector<double> pool(n);
  for (long s = 0; s < est.samples; ++s) {
    for (int i = 0; i < n; ++i) {
      double u = rng.next_unit();
      pool[i] = in_set[i] ? inst.items[i].ue_org
                          : ad_contribution(inst.items[i], quantile(inst.items[i].dist, u));
    }
    stat.add(realized_value(pool, inst.k()));
  }
  return to_estimate(stat, est.seed);
}

FixConfig gfix_select(const Instance& inst, const Estimator& est) {
  const int n = inst.n();
  const int k = inst.k();

  // Enumeration guard.
  double candidates = 0.0, binom = 1.0;
  for (int j = 0; j <= std::min(k, n); ++j) {
    candidates += binom;
    binom = binom * (n - j) / (j + 1);
  }
  if (candidates > 1e6)
    throw GuardExceeded("gfix_select: candidate enumeration exceeds 1e6 sets");

  // Common random numbers: one ad-contribution matrix shared by every
  // candidate set.
  Rng rng(est.seed);
  std::vector<double> a_mat(static_cast<std::size_t>(est.samples) * n);
  for (long s = 0; s < est.samples; ++s)
    for (int i = 0; i < n; ++i)
      a_mat[static_cast<std::size_t>(s) * n + i] =
          ad_contribution(inst.items[i], quantile(inst.items[i].dist, rng.next_unit()));

  std::vector<double> pool(n);
  auto evaluate = [&](const std::vector<int>& set) {
    std::vector<char> in_set(n, 0);
    for (int i : set) in_set[i] = 1;
    double total = 0.0;
    for (long s = 0; s < est.samples; ++s) {
      const double* a = &a_mat[static_cast<std::size_t>(s) * n];
      for (int i = 0; i < n; ++i) pool[i] = in_set[i] ? inst.items[i].ue_org : a[i];
      total += realized_value(pool, k);
    }
    return total / est.samples;
  };

  // Enumerate by size then lexicographically; keep strict improvements only,
  // so ties resolve to the smaller, lexicographically least set.
  FixConfig best;
  double best_value = evaluate({});
  std::vector<int> set;
  for (int size = 1; size <= std::min(k, n); ++size) {
    set.assign(size, 0);
    for (int j = 0; j < size; ++j) set[j] = j;
    while (true) {
      double v = evaluate(set);
      if (v > best_value) {
        best_value = v;
        best.organic_set = set;
      }
      // next combination
      int j = size - 1;
      while (j >= 0 && set[j] == n - size + j) --j;
      if (j < 0) break;
      ++set[j];
      for (int l = j + 1; l < size; ++l) set[l] = set[l - 1] + 1;
    }
  }
  return best;
}

Allocation gfix_allocate(const Instance& inst, const BidProfile& bids, const FixConfig& cfg) {
  return gfix_i_allocate(cfg, contribution(inst, bids), inst.k());
}

}  // namespace mergemech

#include "mergemech/evaluation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "mergemech/rng.hpp"

namespace mergemech {

namespace {

BidProfile draw_bids(const Instance& inst, Rng& rng) {
  BidProfile bids(inst.n());
  for (int i = 0; i < inst.n(); ++i) bids[i] = quantile(inst.items[i].dist, rng.next_unit());
  return bids;
}

// Binomial coefficients up to n = 64 fit in unsigned long long.
unsigned long long binom_ull(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::vector<unsigned long long> row(static_cast<std::size_t>(k) + 1, 0);
  row[0] = 1;
  for (int i = 1; i <= n; ++i)
    for (int j = std::min(i, k); j >= 1; --j) row[j] += row[j - 1];
  return row[k];
}

}  // namespace

ObjectiveEstimate mc_objective(const MechanismHandle& m, const Instance& inst, long samples,
                               std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("mc_objective: samples must be >= 1");
  Rng rng(seed);
  RunningStat stat;
  for (long s = 0; s < samples; ++s) {
    BidProfile bids = draw_bids(inst, rng);
    ContributionProfile c = contribution(inst, bids);
    Allocation alloc = m.rule(inst, bids);
    stat.add(objective_of(alloc, c, inst.k()));
  }
  return to_estimate(stat, seed);
}

RevenueUeEstimate mc_revenue_ue(const MechanismHandle& m, const Instance& inst, long samples,
                                std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("mc_revenue_ue: samples must be >= 1");
  Rng rng(seed);
  RunningStat pay, virt, ue, gap;
  for (long s = 0; s < samples; ++s) {
    BidProfile bids = draw_bids(inst, rng);
    Outcome out = outcome(m, inst, bids);
    double rev_pay = 0.0, rev_virt = 0.0, experience = 0.0;
    for (int i = 0; i < inst.n(); ++i) {
      const ItemParams& it = inst.items[i];
      if (out.alloc.x[i]) {
        rev_pay += out.payments[i] * it.ctr_ad;
        rev_virt += virtual_value(it.dist, bids[i]) * it.ctr_ad;
        experience += it.ue_ad;
      }
      if (out.alloc.y[i]) experience += it.ue_org;
    }
    pay.add(rev_pay);
    virt.add(rev_virt);
    ue.add(experience);
    gap.add(rev_pay - rev_virt);
  }
  return {to_estimate(pay, seed), to_estimate(virt, seed), to_estimate(ue, seed),
          to_estimate(gap, seed)};
}

ObjectiveEstimate upper_bound_topk(const Instance& inst, long samples, std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("upper_bound_topk: samples must be >= 1");
  const int n = inst.n();
  const int k = inst.k();

  std::vector<double> o_all(n);
  for (int i = 0; i < n; ++i) o_all[i] = inst.items[i].ue_org;
  std::sort(o_all.begin(), o_all.end(), std::greater<double>());
  const int keep = std::min(k, n);

  Rng rng(seed);
  RunningStat stat;
  std::vector<double> pool(static_cast<std::size_t>(keep) + n);
  for (long s = 0; s < samples; ++s) {
    for (int j = 0; j < keep; ++j) pool[j] = o_all[j];
    for (int i = 0; i < n; ++i)
      pool[keep + i] = ad_contribution(inst.items[i], quantile(inst.items[i].dist, rng.next_unit()));
    stat.add(top_k_sum(pool, k));
  }
  return to_estimate(stat, seed);
}

double oracle_two_of_three(const Instance& inst, const QuadratureSpec& quad) {
  if (inst.n() != 3 || inst.k() != 2)
    throw std::invalid_argument("oracle_two_of_three: requires 3 items and 2 slots");

  UnitRule rule = build_unit_rule(quad.nodes);
  std::array<ContributionQuadrature, 3> cq = {
      ContributionQuadrature(inst.items[0], rule),
      ContributionQuadrature(inst.items[1], rule),
      ContributionQuadrature(inst.items[2], rule),
  };

  std::array<int, 3> perm = {0, 1, 2};
  std::sort(perm.begin(), perm.end());
  double best = -std::numeric_limits<double>::infinity();
  do {
    const int i1 = perm[0], i2 = perm[1], i3 = perm[2];
    const double o1 = inst.items[i1].ue_org;
    const double o2 = inst.items[i2].ue_org;
    double outer = 0.0;
    for (std::size_t q3 = 0; q3 < cq[i3].values().size(); ++q3) {
      const double a3 = cq[i3].values()[q3];
      double middle = 0.0;
      for (std::size_t q2 = 0; q2 < cq[i2].values().size(); ++q2) {
        const double a2 = cq[i2].values()[q2];
        // E over a_{i1} of top-2 of {a_{i1}, a2, a3}.
        double inner =
            std::max(a2, a3) + cq[i1].expected_max_with(std::min(a2, a3));
        middle += cq[i2].weights()[q2] * std::max(o1 + std::max(a2, a3), inner);
      }
      outer += cq[i3].weights()[q3] * std::max(o1 + o2, middle);
    }
    best = std::max(best, outer);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

bool rational_at_least(const Rational& r, long long a, long long b) {
  // r.num / r.den >= a / b with positive denominators.
  return static_cast<__int128>(r.num) * b >= static_cast<__int128>(a) * r.den;
}

Rational combinatorial_ratio(int n, int k) {
  if (k == 0) return {1, 1};
  if (k < 0 || n < 2 * k) throw std::invalid_argument("combinatorial_ratio: requires 2k <= n");
  if (n > 64) throw std::invalid_argument("combinatorial_ratio: n must be <= 64");
  unsigned long long num = binom_ull(n - k, k);
  unsigned long long den = binom_ull(n, k);
  unsigned long long g = std::gcd(num, den);
  return {static_cast<long long>(num / g), static_cast<long long>(den / g)};
}

int near_optimality_threshold(int k, double eps) {
  if (k < 1) throw std::invalid_argument("near_optimality_threshold: k must be >= 1");
  if (!(eps > 0.0 && eps < 1.0))
    throw std::invalid_argument("near_optimality_threshold: eps must be in (0,1)");
  double x = static_cast<double>(k) * k / eps;
  // ceil with a relative slack so binary representation noise cannot push an
  // exact integer up a step.
  long long c = static_cast<long long>(std::ceil(x - 1e-9 * std::max(1.0, x)));
  return k + static_cast<int>(c);
}

TailRatioReport tail_ratio_check(int n, int k, int l, int x_grid) {
  if (!(1 <= l && l <= k)) throw std::invalid_argument("tail_ratio_check: requires 1 <= l <= k");
  if (n < 2 * k) throw std::invalid_argument("tail_ratio_check: requires 2k <= n");
  if (x_grid < 1) throw std::invalid_argument("tail_ratio_check: x_grid must be >= 1");

  const double rhs =
      static_cast<double>(binom_ull(n - k, l)) / static_cast<double>(binom_ull(n, l));
  TailRatioReport report;
  report.worst_margin = std::numeric_limits<double>::infinity();
  for (int j = 1; j <= x_grid; ++j) {
    const double x = static_cast<double>(j) / (x_grid + 1);
    double num = 1.0, den = 1.0;
    for (int i = 1; i <= l; ++i) {
      num -= static_cast<double>(binom_ull(n - k, l - i)) * std::pow(x, (n - k) - (l - i)) *
             std::pow(1.0 - x, l - i);
      den -= static_cast<double>(binom_ull(n, l - i)) * std::pow(x, n - (l - i)) *
             std::pow(1.0 - x, l - i);
    }
    double margin = num / den - rhs;
    report.worst_margin = std::min(report.worst_margin, margin);
  }
  report.ok = report.worst_margin >= 0.0;
  return report;
}

}  // namespace mergemech

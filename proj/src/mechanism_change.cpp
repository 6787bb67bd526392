#include "mergemech/mechanism_change.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "mergemech/errors.hpp"
#include "mergemech/rng.hpp"

namespace mergemech {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kRecursionBudget = 20.0;  // bound on k * log2(Q)

// Sum of the m largest of a descending-sorted pool (zero padding adds nothing).
double topsum(const std::vector<double>& pool, int m) {
  if (m <= 0) return 0.0;
  int take = std::min<int>(m, static_cast<int>(pool.size()));
  double s = 0.0;
  for (int j = 0; j < take; ++j) s += pool[j];
  return s;
}

// top-m of (pool u {v}) without materializing the union.
double topsum_with(const std::vector<double>& pool, int m, double v) {
  if (m <= 0) return 0.0;
  if (static_cast<int>(pool.size()) >= m) {
    double s = 0.0;
    for (int j = 0; j + 1 < m; ++j) s += pool[j];
    return s + std::max(v, pool[m - 1]);
  }
  double s = v;
  for (double p : pool) s += p;
  return s;
}

}  // namespace

void validate_change_config(const ChangeConfig& cfg, int n, int k) {
  if (static_cast<int>(cfg.ordered_set.size()) != k)
    throw std::invalid_argument("change config: ordered set must have length k");
  std::vector<char> seen(n, 0);
  for (int i : cfg.ordered_set) {
    if (i < 0 || i >= n) throw std::invalid_argument("change config: index out of range");
    if (seen[i]) throw std::invalid_argument("change config: indices must be distinct");
    seen[i] = 1;
  }
}

ChangeEvaluator::ChangeEvaluator(const Instance& inst, ChangeConfig cfg,
                                 const QuadratureSpec& quad)
    : inst_(&inst), cfg_(std::move(cfg)), k_(inst.k()) {
  validate_change_config(cfg_, inst.n(), k_);
  if (quad.nodes < 2) throw std::invalid_argument("quadrature: nodes must be >= 2");
  if (k_ * std::log2(static_cast<double>(quad.nodes)) > kRecursionBudget)
    throw GuardExceeded("gchange: recursion budget exceeded (k * log2(Q) too large)");

  UnitRule rule = build_unit_rule(quad.nodes);
  pos_quad_.reserve(k_);
  o_of_.reserve(k_);
  o_prefix_.assign(k_ + 1, 0.0);
  in_set_.assign(inst.n(), 0);
  for (int t = 1; t <= k_; ++t) {
    int item = cfg_.ordered_set[t - 1];
    in_set_[item] = 1;
    pos_quad_.emplace_back(inst.items[item], rule);
    o_of_.push_back(inst.items[item].ue_org);
    o_prefix_[t] = o_prefix_[t - 1] + inst.items[item].ue_org;
  }
}

std::vector<double> ChangeEvaluator::pool_excluding_prefix(int t,
                                                           std::span<const double> a_all) const {
  std::vector<double> pool;
  pool.reserve(a_all.size());
  std::vector<char> prefix(inst_->n(), 0);
  for (int j = 0; j < t; ++j) prefix[cfg_.ordered_set[j]] = 1;
  for (int i = 0; i < inst_->n(); ++i)
    if (!prefix[i]) pool.push_back(a_all[i]);
  std::sort(pool.begin(), pool.end(), std::greater<double>());
  return pool;
}

double ChangeEvaluator::w_rec(int t, std::vector<double>& pool) const {
  if (t == 1) {
    // E[top-k of (pool u {a_i1})] - top-(k-1) of pool collapses to
    // E[max(a_i1, k-th largest of pool)].
    double c = static_cast<int>(pool.size()) >= k_ ? pool[k_ - 1] : kNegInf;
    return pos_quad_[0].expected_max_with(c);
  }
  const std::vector<double>& nodes = pos_quad_[t - 1].values();
  const std::vector<double>& wts = pos_quad_[t - 1].weights();
  const double o_prev_prefix = o_prefix_[t - 2];
  double acc = 0.0;
  for (std::size_t q = 0; q < nodes.size(); ++q) {
    double v = nodes[q];
    double r_prev = o_prev_prefix + topsum_with(pool, k_ - t + 1, v);
    auto pos = std::upper_bound(pool.begin(), pool.end(), v, std::greater<double>());
    std::size_t idx = static_cast<std::size_t>(pos - pool.begin());
    pool.insert(pos, v);
    double w_prev = w_rec(t - 1, pool);
    pool.erase(pool.begin() + idx);
    acc += wts[q] * (r_prev + std::max(o_of_[t - 2], w_prev));
  }
  return acc - (o_prefix_[t - 1] + topsum(pool, k_ - t));
}

double ChangeEvaluator::residual(int t, const ContributionProfile& c) const {
  if (t < 1 || t > k_) throw std::invalid_argument("residual: t must be in [1, k]");
  std::vector<double> pool = pool_excluding_prefix(t, c.a);
  return o_prefix_[t - 1] + topsum(pool, k_ - t);
}

double ChangeEvaluator::marginal_w(int t, const ContributionProfile& c) const {
  if (t < 1 || t > k_) throw std::invalid_argument("marginal_w: t must be in [1, k]");
  std::vector<double> pool = pool_excluding_prefix(t, c.a);
  return w_rec(t, pool);
}

int ChangeEvaluator::s_star(const ContributionProfile& c) const {
  std::vector<double> pool = pool_excluding_prefix(k_, c.a);
  for (int t = k_; t >= 1; --t) {
    double w = w_rec(t, pool);
    if (o_of_[t - 1] >= w) return t;
    if (t > 1) {
      double realized = c.a[cfg_.ordered_set[t - 1]];
      pool.insert(std::upper_bound(pool.begin(), pool.end(), realized, std::greater<double>()),
                  realized);
    }
  }
  return 0;
}

Allocation ChangeEvaluator::allocate(const ContributionProfile& c) const {
  const int n = inst_->n();
  int s = s_star(c);

  std::vector<char> prefix(n, 0);
  for (int j = 0; j < s; ++j) prefix[cfg_.ordered_set[j]] = 1;

  std::vector<double> pool;
  pool.reserve(n - s);
  for (int i = 0; i < n; ++i)
    if (!prefix[i]) pool.push_back(c.a[i]);
  double tau = kth_largest(pool, k_ - s + 1);

  Allocation alloc{std::vector<int>(n, 0), std::vector<int>(n, 0)};
  for (int j = 0; j < s; ++j) alloc.y[cfg_.ordered_set[j]] = 1;
  for (int i = 0; i < n; ++i)
    if (!prefix[i] && c.a[i] > tau) alloc.x[i] = 1;
  return alloc;
}

double ChangeEvaluator::formula_value(std::span<const double> a_all) const {
  std::vector<double> pool = pool_excluding_prefix(k_, a_all);
  double w_k = w_rec(k_, pool);
  return std::max(o_prefix_[k_], w_k + o_prefix_[k_ - 1]);
}

double residual_R(const ChangeConfig& cfg, int t, const ContributionProfile& c, int k) {
  validate_change_config(cfg, c.n(), k);
  if (t < 1 || t > k) throw std::invalid_argument("residual_R: t must be in [1, k]");
  std::vector<char> prefix(c.n(), 0);
  double o_sum = 0.0;
  for (int j = 0; j < t; ++j) {
    prefix[cfg.ordered_set[j]] = 1;
    if (j < t - 1) o_sum += c.o[cfg.ordered_set[j]];
  }
  std::vector<double> pool;
  for (int i = 0; i < c.n(); ++i)
    if (!prefix[i]) pool.push_back(c.a[i]);
  return o_sum + top_k_sum(pool, k - t);
}

double marginal_w(const ChangeConfig& cfg, int t, const ContributionProfile& c,
                  const Instance& inst, const QuadratureSpec& quad) {
  return ChangeEvaluator(inst, cfg, quad).marginal_w(t, c);
}

int threshold_s_star(const ChangeConfig& cfg, const ContributionProfile& c, const Instance& inst,
                     const QuadratureSpec& quad) {
  return ChangeEvaluator(inst, cfg, quad).s_star(c);
}

Allocation gchange_i_allocate(const ChangeConfig& cfg, const ContributionProfile& c,
                              const Instance& inst, const QuadratureSpec& quad) {
  return ChangeEvaluator(inst, cfg, quad).allocate(c);
}

ObjectiveEstimate gchange_i_objective(const ChangeConfig& cfg, const Instance& inst,
                                      const Estimator& est, const QuadratureSpec& quad) {
  if (est.samples < 1) throw std::invalid_argument("estimator: samples must be >= 1");
  ChangeEvaluator eval(inst, cfg, quad);
  const int n = inst.n();
  Rng rng(est.seed);
  RunningStat stat;
  std::vector<double> a(n);
  for (long s = 0; s < est.samples; ++s) {
    for (int i = 0; i < n; ++i)
      a[i] = ad_contribution(inst.items[i], quantile(inst.items[i].dist, rng.next_unit()));
    stat.add(eval.formula_value(a));
  }
  return to_estimate(stat, est.seed);
}

ChangeConfig gchange_select(const Instance& inst, const Estimator& est,
                            const QuadratureSpec& quad) {
  const int n = inst.n();
  const int k = inst.k();
  if (k > n) throw GuardExceeded("gchange_select: needs k <= n distinct items");

  double perms = 1.0;
  for (int j = 0; j < k; ++j) perms *= (n - j);
  if (perms > 1e4)
    throw GuardExceeded("gchange_select: ordered-subset enumeration exceeds 1e4");

  // Common random numbers across candidates.
  Rng rng(est.seed);
  std::vector<double> a_mat(static_cast<std::size_t>(est.samples) * n);
  for (long s = 0; s < est.samples; ++s)
    for (int i = 0; i < n; ++i)
      a_mat[static_cast<std::size_t>(s) * n + i] =
          ad_contribution(inst.items[i], quantile(inst.items[i].dist, rng.next_unit()));

  ChangeConfig best;
  double best_value = kNegInf;
  std::vector<int> tuple;
  std::vector<char> used(n, 0);

  auto evaluate = [&](const std::vector<int>& ordered) {
    ChangeEvaluator eval(inst, ChangeConfig{ordered}, quad);
    double total = 0.0;
    for (long s = 0; s < est.samples; ++s)
      total += eval.formula_value(
          std::span<const double>(&a_mat[static_cast<std::size_t>(s) * n], n));
    return total / est.samples;
  };

  // Lexicographic depth-first enumeration; strict improvement keeps the
  // lexicographically least argmax.
  auto enumerate = [&](auto&& self) -> void {
    if (static_cast<int>(tuple.size()) == k) {
      double v = evaluate(tuple);
      if (v > best_value) {
        best_value = v;
        best.ordered_set = tuple;
      }
      return;
    }
    for (int i = 0; i < n; ++i) {
      if (used[i]) continue;
      used[i] = 1;
      tuple.push_back(i);
      self(self);
      tuple.pop_back();
      used[i] = 0;
    }
  };
  enumerate(enumerate);
  return best;
}

Allocation gchange_allocate(const Instance& inst, const BidProfile& bids, const ChangeConfig& cfg,
                            const QuadratureSpec& quad) {
  return gchange_i_allocate(cfg, contribution(inst, bids), inst, quad);
}

}  // namespace mergemech

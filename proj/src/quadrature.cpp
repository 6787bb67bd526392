#include "mergemech/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace mergemech {

namespace {

// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration on P_n.
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (z * p0 - p1) / (z * z - 1.0);
      double z1 = z;
      z = z1 - p0 / pp;
      if (std::abs(z - z1) < 1e-15) break;
    }
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
    w[n - 1 - i] = w[i];
  }
}

}  // namespace

UnitRule build_unit_rule(int nodes) {
  if (nodes < 2) throw std::invalid_argument("quadrature: need at least 2 nodes");
  UnitRule rule;
  rule.u.reserve(nodes);
  rule.w.reserve(nodes);
  std::vector<double> x, w;
  if (nodes % 2 == 0) {
    // Panels of two-point Gauss-Legendre: good worst-case behavior when the
    // integrand has a kink at an unknown location.
    gauss_legendre(2, x, w);
    const int panels = nodes / 2;
    const double h = 1.0 / panels;
    for (int p = 0; p < panels; ++p) {
      double mid = (p + 0.5) * h;
      for (int j = 0; j < 2; ++j) {
        rule.u.push_back(mid + 0.5 * h * x[j]);
        rule.w.push_back(0.5 * h * w[j]);
      }
    }
  } else {
    gauss_legendre(nodes, x, w);
    for (int j = 0; j < nodes; ++j) {
      rule.u.push_back(0.5 * (x[j] + 1.0));
      rule.w.push_back(0.5 * w[j]);
    }
  }
  return rule;
}

ContributionQuadrature::ContributionQuadrature(const ItemParams& item, const UnitRule& rule) {
  const int q = static_cast<int>(rule.u.size());
  std::vector<int> order(q);
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> vals(q);
  for (int j = 0; j < q; ++j) vals[j] = ad_contribution(item, quantile(item.dist, rule.u[j]));
  std::sort(order.begin(), order.end(), [&](int a, int b) { return vals[a] < vals[b]; });

  values_.resize(q);
  weights_.resize(q);
  cum_w_.assign(q + 1, 0.0);
  cum_wv_.assign(q + 1, 0.0);
  for (int j = 0; j < q; ++j) {
    values_[j] = vals[order[j]];
    weights_[j] = rule.w[order[j]];
    cum_w_[j + 1] = cum_w_[j] + weights_[j];
    cum_wv_[j + 1] = cum_wv_[j] + weights_[j] * values_[j];
  }
  mean_ = cum_wv_[q];
}

double ContributionQuadrature::expected_max_with(double c) const {
  const int q = static_cast<int>(values_.size());
  // First node index with value > c; nodes at or below c contribute c.
  int j = static_cast<int>(std::upper_bound(values_.begin(), values_.end(), c) - values_.begin());
  if (j == 0) return mean_;
  return c * cum_w_[j] + (cum_wv_[q] - cum_wv_[j]);
}

}  // namespace mergemech

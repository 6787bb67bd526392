#include <doctest.h>

#include <cmath>

#include "mergemech/quadrature.hpp"

using namespace mergemech;

TEST_CASE("unit rule weights sum to one") {
  for (int q : {8, 16, 31, 32, 64}) {
    UnitRule rule = build_unit_rule(q);
    REQUIRE(static_cast<int>(rule.u.size()) == q);
    double total = 0.0;
    for (double w : rule.w) {
      CHECK(w > 0.0);
      total += w;
    }
    CHECK(std::abs(total - 1.0) <= 1e-12);
    for (double u : rule.u) {
      CHECK(u > 0.0);
      CHECK(u < 1.0);
    }
  }
}

TEST_CASE("rule integrates polynomials and kinks") {
  UnitRule rule = build_unit_rule(32);
  double cubic = 0.0, kink = 0.0;
  for (std::size_t j = 0; j < rule.u.size(); ++j) {
    double u = rule.u[j];
    cubic += rule.w[j] * (u * u * u - 0.5 * u);
    kink += rule.w[j] * std::max(2.0 * u - 1.0, 0.3);
  }
  CHECK(std::abs(cubic) <= 1e-14);  // the rule is exact for cubics
  CHECK(std::abs(kink - 0.4225) <= 2e-4);
}

TEST_CASE("contribution quadrature matches direct summation") {
  ItemParams item;
  item.ctr_ad = 0.5;
  item.ctr_org = 0.9;
  item.ue_ad = 0.1;
  item.ue_org = 0.3;
  item.dist = truncated_exponential_dist(0.0, 2.0, 1.0);

  UnitRule rule = build_unit_rule(32);
  ContributionQuadrature cq(item, rule);

  CHECK(std::abs(cq.expected_max_with(-1e308) - cq.mean()) <= 1e-14);
  for (double c : {-2.0, -0.5, 0.0, 0.123, 0.6, 5.0}) {
    double direct = 0.0;
    for (std::size_t j = 0; j < rule.u.size(); ++j)
      direct += rule.w[j] * std::max(ad_contribution(item, quantile(item.dist, rule.u[j])), c);
    CHECK(cq.expected_max_with(c) == doctest::Approx(direct).epsilon(1e-13));
  }
}

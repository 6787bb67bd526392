#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "mergemech/distribution.hpp"
#include "mergemech/rng.hpp"

using namespace mergemech;

namespace {

// Independent oracle: invert the CDF by bisection only.
double bisect_quantile(const ValueDistribution& d, double u) {
  double lo = d.lo, hi = d.hi;
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    if (cdf(d, mid) < u)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("cdf basics") {
  ValueDistribution u01 = uniform_dist(0.0, 1.0);
  CHECK(cdf(u01, 0.25) == doctest::Approx(0.25));
  CHECK(cdf(u01, -1.0) == 0.0);
  CHECK(cdf(u01, 2.0) == 1.0);

  ValueDistribution te = truncated_exponential_dist(0.0, 2.0, 1.0);
  CHECK(cdf(te, 2.0) == 1.0);
  CHECK(cdf(te, 0.0) == 0.0);
}

TEST_CASE("quantile inverts the cdf") {
  ValueDistribution u24 = uniform_dist(2.0, 4.0);
  CHECK(quantile(u24, 0.5) == doctest::Approx(3.0));
  CHECK(quantile(u24, 0.25) == doctest::Approx(2.5));
  CHECK(quantile(u24, 0.0) == 2.0);
  CHECK(quantile(u24, 1.0) == 4.0);
  CHECK_THROWS_AS(quantile(u24, -0.1), std::domain_error);
  CHECK_THROWS_AS(quantile(u24, 1.1), std::domain_error);

  ValueDistribution te = truncated_exponential_dist(0.0, 2.0, 1.0);
  CHECK(quantile(te, 0.5) == doctest::Approx(bisect_quantile(te, 0.5)).epsilon(1e-9));

  for (const ValueDistribution& d :
       {uniform_dist(0.0, 1.0), uniform_dist(0.5, 3.0), te,
        truncated_exponential_dist(0.2, 1.7, 2.5)}) {
    for (int j = 0; j <= 50; ++j) {
      double u = j / 50.0;
      CHECK(std::abs(cdf(d, quantile(d, u)) - u) <= 1e-10);
    }
  }
}

TEST_CASE("sampling is deterministic and hits the mean") {
  ValueDistribution u01 = uniform_dist(0.0, 1.0);
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) {
    double va = sample(u01, a);
    CHECK(va == sample(u01, b));
    CHECK(va >= 0.0);
    CHECK(va <= 1.0);
  }

  Rng rng(7);
  const int n = 100000;
  double sum = 0.0, sumsq = 0.0;
  for (int i = 0; i < n; ++i) {
    double v = sample(u01, rng);
    sum += v;
    sumsq += v * v;
  }
  double mean = sum / n;
  double se = std::sqrt((sumsq / n - mean * mean) / n);
  CHECK(std::abs(mean - 0.5) < 3.0 * se);
}

TEST_CASE("virtual value closed forms") {
  ValueDistribution u01 = uniform_dist(0.0, 1.0);
  CHECK(virtual_value(u01, 0.75) == doctest::Approx(0.5));
  CHECK(virtual_value(u01, 0.5) == doctest::Approx(0.0));
  for (double hi : {1.0, 2.0, 3.5}) {
    ValueDistribution d = uniform_dist(0.0, hi);
    CHECK(virtual_value(d, hi) == doctest::Approx(hi));
  }
  CHECK_THROWS_AS(virtual_value(u01, 1.5), std::domain_error);
}

TEST_CASE("virtual value is monotone on a quantile grid") {
  for (const ValueDistribution& d :
       {uniform_dist(0.0, 1.0), uniform_dist(1.0, 4.0),
        truncated_exponential_dist(0.0, 2.0, 1.0),
        truncated_exponential_dist(0.0, 5.0, 0.3)}) {
    double prev = virtual_value(d, d.lo);
    for (int j = 1; j <= 200; ++j) {
      double b = quantile(d, j / 200.0);
      double phi = virtual_value(d, b);
      CHECK(phi >= prev - 1e-9);
      prev = phi;
    }
  }
}

TEST_CASE("inverse virtual value") {
  ValueDistribution u01 = uniform_dist(0.0, 1.0);
  CHECK(inverse_virtual_value(u01, 0.0).value() == doctest::Approx(0.5).epsilon(1e-8));
  CHECK(inverse_virtual_value(u01, -5.0).value() == 0.0);
  CHECK(inverse_virtual_value(u01, 0.2).value() == doctest::Approx(0.6).epsilon(1e-8));
  CHECK(!inverse_virtual_value(u01, 1.5).has_value());

  // Round trip on the strictly increasing region.
  for (const ValueDistribution& d :
       {uniform_dist(0.0, 2.0), truncated_exponential_dist(0.0, 2.0, 1.0)}) {
    for (int j = 1; j < 20; ++j) {
      double b = quantile(d, j / 20.0);
      auto back = inverse_virtual_value(d, virtual_value(d, b));
      REQUIRE(back.has_value());
      CHECK(*back == doctest::Approx(b).epsilon(1e-8));
    }
  }
}

TEST_CASE("regularity report") {
  CHECK(check_regularity(uniform_dist(0.0, 1.0), 1000).ok);
  CHECK(check_regularity(truncated_exponential_dist(0.0, 2.0, 1.0), 1000).ok);
  CHECK(check_regularity(uniform_dist(0.0, 1.0), 2).ok);
  CHECK_THROWS_AS(check_regularity(uniform_dist(0.0, 1.0), 1), std::invalid_argument);
}

TEST_CASE("construction rejects bad parameters") {
  CHECK_THROWS_AS(uniform_dist(1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(uniform_dist(-0.5, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(truncated_exponential_dist(0.0, 1.0, 0.0), std::invalid_argument);
}

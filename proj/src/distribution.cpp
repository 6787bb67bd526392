#include "mergemech/distribution.hpp"

#include <cmath>
#include <stdexcept>

namespace mergemech {

namespace {

void validate_support(double lo, double hi) {
  if (!(lo >= 0.0)) throw std::invalid_argument("distribution: lo must be >= 0");
  if (!(hi > lo)) throw std::invalid_argument("distribution: hi must be > lo");
  if (!std::isfinite(lo) || !std::isfinite(hi))
    throw std::invalid_argument("distribution: support must be finite");
}

// Normalizer Z = 1 - exp(-rate * (hi - lo)).
double texp_z(const ValueDistribution& d) { return -std::expm1(-d.rate * (d.hi - d.lo)); }

}  // namespace

ValueDistribution uniform_dist(double lo, double hi) {
  validate_support(lo, hi);
  return ValueDistribution{DistKind::uniform, lo, hi, 0.0};
}

ValueDistribution truncated_exponential_dist(double lo, double hi, double rate) {
  validate_support(lo, hi);
  if (!(rate > 0.0)) throw std::invalid_argument("truncated_exponential: rate must be > 0");
  return ValueDistribution{DistKind::truncated_exponential, lo, hi, rate};
}

std::string to_string(const ValueDistribution& d) {
  switch (d.kind) {
    case DistKind::uniform:
      return "uniform(" + std::to_string(d.lo) + "," + std::to_string(d.hi) + ")";
    case DistKind::truncated_exponential:
      return "truncated_exponential(" + std::to_string(d.lo) + "," + std::to_string(d.hi) +
             ",rate=" + std::to_string(d.rate) + ")";
  }
  return "?";
}

double cdf(const ValueDistribution& d, double v) {
  if (v <= d.lo) return 0.0;
  if (v >= d.hi) return 1.0;
  switch (d.kind) {
    case DistKind::uniform:
      return (v - d.lo) / (d.hi - d.lo);
    case DistKind::truncated_exponential:
      return -std::expm1(-d.rate * (v - d.lo)) / texp_z(d);
  }
  return 0.0;
}

double pdf(const ValueDistribution& d, double v) {
  if (v < d.lo || v > d.hi) return 0.0;
  switch (d.kind) {
    case DistKind::uniform:
      return 1.0 / (d.hi - d.lo);
    case DistKind::truncated_exponential:
      return d.rate * std::exp(-d.rate * (v - d.lo)) / texp_z(d);
  }
  return 0.0;
}

double quantile(const ValueDistribution& d, double u) {
  if (!(u >= 0.0 && u <= 1.0)) throw std::domain_error("quantile: u must be in [0,1]");
  if (u == 0.0) return d.lo;
  if (u == 1.0) return d.hi;
  switch (d.kind) {
    case DistKind::uniform:
      return d.lo + u * (d.hi - d.lo);
    case DistKind::truncated_exponential: {
      double v = d.lo - std::log1p(-u * texp_z(d)) / d.rate;
      return std::min(v, d.hi);
    }
  }
  return d.lo;
}

double sample(const ValueDistribution& d, Rng& rng) { return quantile(d, rng.next_unit()); }

double virtual_value(const ValueDistribution& d, double b) {
  if (b < d.lo || b > d.hi) throw std::domain_error("virtual_value: bid outside support");
  // (1 - F) / f has a closed form per family; evaluated from cdf/pdf except at
  // the top of the support where both limits give phi(hi) = hi.
  if (b == d.hi) return d.hi;
  return b - (1.0 - cdf(d, b)) / pdf(d, b);
}

std::optional<double> inverse_virtual_value(const ValueDistribution& d, double w) {
  if (w <= virtual_value(d, d.lo)) return d.lo;
  if (w > virtual_value(d, d.hi)) return std::nullopt;
  double lo = d.lo, hi = d.hi;
  for (int it = 0; it < 200 && hi - lo > 1e-13 * (d.hi - d.lo); ++it) {
    double mid = 0.5 * (lo + hi);
    if (virtual_value(d, mid) >= w)
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

RegularityReport check_regularity(const ValueDistribution& d, int grid_size) {
  if (grid_size < 2) throw std::invalid_argument("check_regularity: grid_size must be >= 2");
  RegularityReport report;
  double prev = virtual_value(d, d.lo);
  for (int j = 1; j < grid_size; ++j) {
    double u = static_cast<double>(j) / (grid_size - 1);
    double phi = virtual_value(d, quantile(d, u));
    double decrease = prev - phi;
    if (decrease > report.worst_violation) report.worst_violation = decrease;
    prev = phi;
  }
  report.ok = report.worst_violation <= 1e-9;
  return report;
}

}  // namespace mergemech

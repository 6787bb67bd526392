#pragma once

#include <optional>
#include <string>

#include "mergemech/rng.hpp"

namespace mergemech {

enum class DistKind { uniform, truncated_exponential };

/// Regular prior value distribution with bounded support [lo, hi].
/// Immutable after construction; safe to share across workers.
struct ValueDistribution {
  DistKind kind = DistKind::uniform;
  double lo = 0.0;
  double hi = 1.0;
  double rate = 1.0;  // truncated_exponential only
};

ValueDistribution uniform_dist(double lo, double hi);
ValueDistribution truncated_exponential_dist(double lo, double hi, double rate);

std::string to_string(const ValueDistribution& d);

/// F(v): 0 below lo, 1 above hi, strictly increasing between.
double cdf(const ValueDistribution& d, double v);

/// f(v): density on (lo, hi); 0 outside.
double pdf(const ValueDistribution& d, double v);

/// Inverse CDF. Throws std::domain_error for u outside [0, 1].
double quantile(const ValueDistribution& d, double u);

/// quantile(d, u) for u drawn uniformly; deterministic given the rng state.
double sample(const ValueDistribution& d, Rng& rng);

/// phi(b) = b - (1 - F(b)) / f(b). Monotone non-decreasing on the support
/// for the shipped families. Throws std::domain_error if b is outside [lo, hi].
double virtual_value(const ValueDistribution& d, double b);

/// Smallest b in [lo, hi] with virtual_value(d, b) >= w, by bisection.
/// Saturates at lo for small w; returns nullopt when w > phi(hi).
std::optional<double> inverse_virtual_value(const ValueDistribution& d, double w);

struct RegularityReport {
  bool ok = true;
  double worst_violation = 0.0;  // largest observed decrease of phi on the grid
};

/// Evaluates phi on grid_size quantile-equispaced points; ok iff no decrease
/// beyond 1e-9. Requires grid_size >= 2.
RegularityReport check_regularity(const ValueDistribution& d, int grid_size);

}  // namespace mergemech

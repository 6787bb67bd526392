#pragma once

#include <cstdint>

namespace mergemech {

/// Monte Carlo budget: sample count plus an explicit seed (no wall-clock
/// seeding anywhere).
struct Estimator {
  long samples = 10000;
  std::uint64_t seed = 1;
};

/// Monte Carlo mean with its standard error; reproducible from (seed, samples).
struct ObjectiveEstimate {
  double mean = 0.0;
  double se = 0.0;
  long samples = 0;
  std::uint64_t seed = 0;
};

/// Streaming mean/variance accumulator (Welford).
class RunningStat {
 public:
  void add(double v) {
    ++n_;
    double d = v - mean_;
    mean_ += d / n_;
    m2_ += d * (v - mean_);
  }
  long count() const { return n_; }
  double mean() const { return mean_; }
  double variance() const { return n_ > 1 ? m2_ / (n_ - 1) : 0.0; }
  double std_error() const;

 private:
  long n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

ObjectiveEstimate to_estimate(const RunningStat& stat, std::uint64_t seed);

}  // namespace mergemech

#include "mergemech/estimate.hpp"

#include <cmath>

namespace mergemech {

double RunningStat::std_error() const {
  return n_ > 1 ? std::sqrt(variance() / n_) : 0.0;
}

ObjectiveEstimate to_estimate(const RunningStat& stat, std::uint64_t seed) {
  return {stat.mean(), stat.std_error(), stat.count(), seed};
}

}  // namespace mergemech

#pragma once

#include <stdexcept>
#include <string>

namespace mergemech {

/// Invalid configuration or malformed input file.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// An enumeration or recursion exceeded its tractability guard.
class GuardExceeded : public std::runtime_error {
 public:
  explicit GuardExceeded(const std::string& what) : std::runtime_error(what) {}
};

/// A display indicator turned off as the bid increased; carries the
/// witnessing bid pair (low displays, high does not).
class NonMonotoneAllocation : public std::runtime_error {
 public:
  NonMonotoneAllocation(int item, double bid_displayed, double bid_hidden)
      : std::runtime_error("non-monotone display indicator for item " + std::to_string(item) +
                           ": displayed at bid " + std::to_string(bid_displayed) +
                           " but not at higher bid " + std::to_string(bid_hidden)),
        item(item),
        bid_displayed(bid_displayed),
        bid_hidden(bid_hidden) {}

  int item;
  double bid_displayed;
  double bid_hidden;
};

}  // namespace mergemech

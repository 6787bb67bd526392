#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mergemech/model.hpp"

namespace mergemech {

struct MechanismSpec {
  enum class Kind { pure_ad, gfix, gchange, gfix_i, gchange_i };
  Kind kind = Kind::pure_ad;
  std::vector<int> set;  // organic set (gfix_i) or ordered set (gchange_i)

  std::string name() const;
};

/// One JSON document fully determines a run. Seeds are always explicit.
struct RunConfig {
  Instance instance;
  std::vector<MechanismSpec> mechanisms;
  long samples = 10000;
  std::uint64_t seed = 1;
  int quadrature_nodes = 32;
  long select_samples = 0;  // 0 = min(samples, 5000); used by the selectors
  long audit_profiles = 200;
  int audit_grid = 50;
  std::string output;  // empty = stdout

  long effective_select_samples() const {
    return select_samples > 0 ? select_samples : std::min<long>(samples, 5000);
  }
};

/// Parses and fully validates a config file. Throws ConfigError naming the
/// offending field or violated invariant.
RunConfig parse_config(const std::string& path);

/// Same, from a JSON document text (exposed for tests).
RunConfig parse_config_text(const std::string& text);

}  // namespace mergemech

#include "mergemech/handles.hpp"

#include <memory>
#include <utility>

namespace mergemech {

MechanismHandle pure_ad_handle() { return gfix_i_handle(FixConfig{}, "pure_ad"); }

MechanismHandle gfix_i_handle(FixConfig cfg, std::string label) {
  MechanismHandle m;
  m.label = std::move(label);
  m.rule = [cfg = std::move(cfg)](const Instance& inst, const BidProfile& bids) {
    return gfix_allocate(inst, bids, cfg);
  };
  return m;
}

MechanismHandle gchange_i_handle(const Instance& inst, ChangeConfig cfg,
                                 const QuadratureSpec& quad, std::string label) {
  MechanismHandle m;
  m.label = std::move(label);
  auto eval = std::make_shared<const ChangeEvaluator>(inst, std::move(cfg), quad);
  m.rule = [eval](const Instance& call_inst, const BidProfile& bids) {
    return eval->allocate(contribution(call_inst, bids));
  };
  return m;
}

}  // namespace mergemech

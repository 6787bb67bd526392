#include "mergemech/config.hpp"

#include <algorithm>
#include <fstream>

#include <json.hpp>

#include "mergemech/errors.hpp"

namespace mergemech {

namespace {

using nlohmann::json;

double require_number(const json& obj, const char* field, const std::string& where) {
  if (!obj.contains(field))
    throw ConfigError(where + ": missing field \"" + field + "\"");
  if (!obj[field].is_number())
    throw ConfigError(where + ": field \"" + field + "\" must be a number");
  return obj[field].get<double>();
}

ValueDistribution parse_dist(const json& obj, const std::string& where) {
  if (!obj.is_object()) throw ConfigError(where + ": \"dist\" must be an object");
  if (!obj.contains("kind") || !obj["kind"].is_string())
    throw ConfigError(where + ": dist needs a string \"kind\"");
  const std::string kind = obj["kind"].get<std::string>();
  const double lo = require_number(obj, "lo", where + ".dist");
  const double hi = require_number(obj, "hi", where + ".dist");
  try {
    if (kind == "uniform") return uniform_dist(lo, hi);
    if (kind == "truncated_exponential")
      return truncated_exponential_dist(lo, hi, require_number(obj, "rate", where + ".dist"));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(where + ": " + e.what());
  }
  throw ConfigError(where + ": unknown distribution kind \"" + kind + "\"");
}

MechanismSpec parse_mechanism(const json& entry, const std::string& where) {
  MechanismSpec spec;
  std::string kind;
  if (entry.is_string()) {
    kind = entry.get<std::string>();
  } else if (entry.is_object()) {
    if (!entry.contains("kind") || !entry["kind"].is_string())
      throw ConfigError(where + ": mechanism object needs a string \"kind\"");
    kind = entry["kind"].get<std::string>();
    if (entry.contains("set")) {
      if (!entry["set"].is_array())
        throw ConfigError(where + ": mechanism \"set\" must be an array of item indices");
      for (const json& v : entry["set"]) {
        if (!v.is_number_integer())
          throw ConfigError(where + ": mechanism \"set\" entries must be integers");
        spec.set.push_back(v.get<int>());
      }
    }
  } else {
    throw ConfigError(where + ": mechanism entries must be strings or objects");
  }

  if (kind == "pure_ad")
    spec.kind = MechanismSpec::Kind::pure_ad;
  else if (kind == "gfix")
    spec.kind = MechanismSpec::Kind::gfix;
  else if (kind == "gchange")
    spec.kind = MechanismSpec::Kind::gchange;
  else if (kind == "gfix_i")
    spec.kind = MechanismSpec::Kind::gfix_i;
  else if (kind == "gchange_i")
    spec.kind = MechanismSpec::Kind::gchange_i;
  else
    throw ConfigError(where + ": unknown mechanism \"" + kind + "\"");

  bool needs_set =
      spec.kind == MechanismSpec::Kind::gfix_i || spec.kind == MechanismSpec::Kind::gchange_i;
  if (!needs_set && !spec.set.empty())
    throw ConfigError(where + ": \"" + kind + "\" does not take a \"set\"");
  return spec;
}

RunConfig parse_config_doc(const json& doc) {
  if (!doc.is_object()) throw ConfigError("config: top level must be a JSON object");
  RunConfig cfg;

  if (!doc.contains("slots") || !doc["slots"].is_number_integer())
    throw ConfigError("config: integer \"slots\" is required");
  cfg.instance.slots = doc["slots"].get<int>();
  if (cfg.instance.slots < 1) throw ConfigError("config: slots must be >= 1");

  if (!doc.contains("items") || !doc["items"].is_array() || doc["items"].empty())
    throw ConfigError("config: non-empty \"items\" array is required");
  int idx = 0;
  for (const json& it : doc["items"]) {
    const std::string where = "items[" + std::to_string(idx) + "]";
    if (!it.is_object()) throw ConfigError(where + ": must be an object");
    ItemParams item;
    item.ctr_ad = require_number(it, "ctr_ad", where);
    item.ctr_org = require_number(it, "ctr_org", where);
    item.ue_ad = require_number(it, "ue_ad", where);
    item.ue_org = require_number(it, "ue_org", where);
    if (!it.contains("dist")) throw ConfigError(where + ": missing \"dist\"");
    item.dist = parse_dist(it["dist"], where);
    cfg.instance.items.push_back(item);
    ++idx;
  }

  if (!doc.contains("samples") || !doc["samples"].is_number_integer())
    throw ConfigError("config: integer \"samples\" is required");
  cfg.samples = doc["samples"].get<long>();
  if (cfg.samples < 100) throw ConfigError("config: samples must be >= 100");

  if (!doc.contains("seed") || !doc["seed"].is_number_integer())
    throw ConfigError("config: integer \"seed\" is required (no wall-clock seeding)");
  cfg.seed = doc["seed"].get<std::uint64_t>();

  cfg.quadrature_nodes = 32;
  if (doc.contains("quadrature_nodes")) {
    if (!doc["quadrature_nodes"].is_number_integer())
      throw ConfigError("config: quadrature_nodes must be an integer");
    cfg.quadrature_nodes = doc["quadrature_nodes"].get<int>();
  }
  if (cfg.quadrature_nodes < 8 || cfg.quadrature_nodes > 64)
    throw ConfigError("config: quadrature_nodes must be in [8, 64]");

  if (doc.contains("select_samples")) {
    cfg.select_samples = doc["select_samples"].get<long>();
    if (cfg.select_samples < 100) throw ConfigError("config: select_samples must be >= 100");
  }
  if (doc.contains("audit_profiles")) {
    cfg.audit_profiles = doc["audit_profiles"].get<long>();
    if (cfg.audit_profiles < 1) throw ConfigError("config: audit_profiles must be >= 1");
  }
  if (doc.contains("audit_grid")) {
    cfg.audit_grid = doc["audit_grid"].get<int>();
    if (cfg.audit_grid < 10) throw ConfigError("config: audit_grid must be >= 10");
  }
  if (doc.contains("output")) {
    if (!doc["output"].is_string()) throw ConfigError("config: output must be a string path");
    cfg.output = doc["output"].get<std::string>();
  }

  if (!doc.contains("mechanisms") || !doc["mechanisms"].is_array() || doc["mechanisms"].empty())
    throw ConfigError("config: non-empty \"mechanisms\" array is required");
  int midx = 0;
  for (const json& entry : doc["mechanisms"]) {
    const std::string where = "mechanisms[" + std::to_string(midx) + "]";
    MechanismSpec spec = parse_mechanism(entry, where);
    const int n = cfg.instance.n();
    const int k = cfg.instance.k();
    for (int i : spec.set)
      if (i < 0 || i >= n)
        throw ConfigError(where + ": set index " + std::to_string(i) + " out of range [0, " +
                          std::to_string(n) + ")");
    std::vector<int> sorted_set = spec.set;
    std::sort(sorted_set.begin(), sorted_set.end());
    if (std::adjacent_find(sorted_set.begin(), sorted_set.end()) != sorted_set.end())
      throw ConfigError(where + ": set indices must be distinct");
    if (spec.kind == MechanismSpec::Kind::gfix_i) {
      if (static_cast<int>(spec.set.size()) > k)
        throw ConfigError(where + ": gfix_i set size must be <= slots");
      spec.set = sorted_set;  // the organic set is unordered
    }
    if (spec.kind == MechanismSpec::Kind::gchange_i &&
        static_cast<int>(spec.set.size()) != k)
      throw ConfigError(where + ": gchange_i set must list exactly " + std::to_string(k) +
                        " items");
    cfg.mechanisms.push_back(std::move(spec));
    ++midx;
  }

  validate_instance(cfg.instance);
  return cfg;
}

}  // namespace

std::string MechanismSpec::name() const {
  switch (kind) {
    case Kind::pure_ad:
      return "pure_ad";
    case Kind::gfix:
      return "gfix";
    case Kind::gchange:
      return "gchange";
    case Kind::gfix_i: {
      std::string s = "gfix_i(";
      for (std::size_t j = 0; j < set.size(); ++j) s += (j ? "," : "") + std::to_string(set[j]);
      return s + ")";
    }
    case Kind::gchange_i: {
      std::string s = "gchange_i(";
      for (std::size_t j = 0; j < set.size(); ++j) s += (j ? "," : "") + std::to_string(set[j]);
      return s + ")";
    }
  }
  return "?";
}

RunConfig parse_config_text(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("config: JSON parse error: ") + e.what());
  }
  return parse_config_doc(doc);
}

RunConfig parse_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("config: cannot open file " + path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_config_text(text);
}

}  // namespace mergemech

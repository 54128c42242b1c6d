#include "gsnforge/binding_plan.hpp"

#include <json.hpp>

#include "gsnforge/errors.hpp"

namespace gsnforge {

using nlohmann::json;

namespace {

std::vector<std::string> id_list(const json& j, const char* field) {
  if (!j.contains(field)) {
    throw Error(ErrorCode::kInvalidPlan, std::string("missing '") + field + "'");
  }
  const json& v = j.at(field);
  if (v.is_string()) return {v.get<std::string>()};
  return v.get<std::vector<std::string>>();
}

}  // namespace

BindingPlan parse_plan_json(std::string_view text) {
  BindingPlan plan;
  try {
    json j = json::parse(text);
    if (!j.is_object()) throw Error(ErrorCode::kInvalidPlan, "plan must be an object");
    if (j.contains("bindings")) {
      for (const auto& [id, v] : j.at("bindings").items()) {
        plan.bindings[id] = v.is_string() ? std::vector<std::string>{v.get<std::string>()}
                                          : v.get<std::vector<std::string>>();
      }
    }
    if (j.contains("counts")) {
      for (const json& e : j.at("counts")) {
        plan.counts.push_back(CountEntry{e.at("source").get<std::string>(),
                                         id_list(e, "targets"),
                                         e.at("count").get<std::uint32_t>()});
      }
    }
    if (j.contains("selections")) {
      for (const json& e : j.at("selections")) {
        plan.selections.push_back(SelectionEntry{e.at("source").get<std::string>(),
                                                 id_list(e, "targets"),
                                                 id_list(e, "selected")});
      }
    }
    if (j.contains("inclusions")) {
      for (const json& e : j.at("inclusions")) {
        plan.inclusions.push_back(InclusionEntry{e.at("source").get<std::string>(),
                                                 id_list(e, "targets"),
                                                 e.at("include").get<bool>()});
      }
    }
    if (j.contains("keep_undeveloped")) {
      for (const auto& [id, v] : j.at("keep_undeveloped").items()) {
        plan.keep_undeveloped[id] = v.get<bool>();
      }
    }
    if (j.contains("wildcard_cap")) {
      plan.wildcard_cap = j.at("wildcard_cap").get<std::uint32_t>();
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kInvalidPlan, e.what());
  }
  return plan;
}

std::string plan_to_json(const BindingPlan& plan) {
  json j;
  j["bindings"] = json::object();
  for (const auto& [id, texts] : plan.bindings) j["bindings"][id] = texts;
  j["counts"] = json::array();
  for (const CountEntry& e : plan.counts) {
    j["counts"].push_back({{"source", e.source}, {"targets", e.targets}, {"count", e.count}});
  }
  j["selections"] = json::array();
  for (const SelectionEntry& e : plan.selections) {
    j["selections"].push_back(
        {{"source", e.source}, {"targets", e.targets}, {"selected", e.selected}});
  }
  j["inclusions"] = json::array();
  for (const InclusionEntry& e : plan.inclusions) {
    j["inclusions"].push_back(
        {{"source", e.source}, {"targets", e.targets}, {"include", e.include}});
  }
  j["keep_undeveloped"] = json::object();
  for (const auto& [id, keep] : plan.keep_undeveloped) j["keep_undeveloped"][id] = keep;
  j["wildcard_cap"] = plan.wildcard_cap;
  return j.dump(2) + "\n";
}

}  // namespace gsnforge

#include "lea/io.hpp"

#include <set>

#include "json.hpp"
#include "lea/formula.hpp"

namespace lea {

namespace {

using nlohmann::json;

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw JsonError(std::string("malformed JSON: ") + e.what());
  }
}

void only_keys(const json& j, std::initializer_list<std::string_view> allowed, const char* what) {
  if (!j.is_object()) throw JsonError(std::string(what) + ": expected an object");
  for (const auto& [key, _] : j.items()) {
    bool known = false;
    for (auto a : allowed) known = known || key == a;
    if (!known) throw JsonError(std::string(what) + ": unknown key \"" + key + "\"");
  }
}

std::string as_string(const json& j, const char* what) {
  if (!j.is_string()) throw JsonError(std::string(what) + ": expected a string");
  return j.get<std::string>();
}

std::pair<WorldId, WorldId> as_pair(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 2) throw JsonError(std::string(what) + ": expected a pair of world ids");
  return {as_string(j[0], what), as_string(j[1], what)};
}

std::string string_list(const std::vector<std::string>& items) {
  std::string out = "[";
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? "," : "") + json_quote(items[i]);
  return out + "]";
}

}  // namespace

std::string json_quote(const std::string& s) { return json(s).dump(); }

ModelDocument parse_model_json(std::string_view text) {
  json j = parse_json(text);
  only_keys(j, {"worlds", "rel", "val", "point"}, "model");
  if (!j.contains("worlds") || !j["worlds"].is_array())
    throw JsonError("model: \"worlds\" must be an array of world ids");
  std::vector<WorldId> worlds;
  for (const auto& w : j["worlds"]) worlds.push_back(as_string(w, "worlds"));
  std::set<WorldId> declared(worlds.begin(), worlds.end());
  auto check = [&](const WorldId& w, const char* where) {
    if (!declared.count(w)) throw JsonError(std::string(where) + ": undeclared world \"" + w + "\"");
  };

  std::vector<std::pair<WorldId, WorldId>> rel;
  if (j.contains("rel")) {
    if (!j["rel"].is_array()) throw JsonError("model: \"rel\" must be an array of pairs");
    for (const auto& e : j["rel"]) {
      auto p = as_pair(e, "rel");
      check(p.first, "rel");
      check(p.second, "rel");
      rel.push_back(std::move(p));
    }
  }
  std::map<std::string, std::vector<WorldId>> val;
  if (j.contains("val")) {
    if (!j["val"].is_object()) throw JsonError("model: \"val\" must be an object");
    for (const auto& [var, ext] : j["val"].items()) {
      if (!is_identifier(var)) throw JsonError("val: \"" + var + "\" is not a variable name");
      if (!ext.is_array()) throw JsonError("val: extension of " + var + " must be an array");
      auto& out = val[var];
      for (const auto& w : ext) {
        out.push_back(as_string(w, "val"));
        check(out.back(), "val");
      }
    }
  }
  std::optional<WorldId> point;
  if (j.contains("point")) {
    point = as_string(j["point"], "point");
    check(*point, "point");
  }
  try {
    return {Model(std::move(worlds), rel, val), std::move(point)};
  } catch (const InvalidModel& e) {
    throw JsonError(std::string("model: ") + e.what());
  }
}

std::string model_to_json(const Model& m, const std::optional<WorldId>& point) {
  std::string out = "{\"worlds\": " + string_list(m.worlds()) + ", \"rel\": [";
  bool first = true;
  for (const auto& [a, b] : m.relation()) {
    out += (first ? "" : ",") + string_list({a, b});
    first = false;
  }
  out += "], \"val\": {";
  first = true;
  for (const auto& [var, ext] : m.valuation()) {
    std::vector<std::string> members;
    for (auto w : ext.members()) members.push_back(m.world(w));
    out += (first ? "" : ", ") + json_quote(var) + ": " + string_list(members);
    first = false;
  }
  out += "}";
  if (point) out += ", \"point\": " + json_quote(*point);
  return out + "}";
}

BisimRelation parse_relation_json(std::string_view text, const Model& carrier) {
  json j = parse_json(text);
  only_keys(j, {"pairs"}, "relation");
  if (!j.contains("pairs") || !j["pairs"].is_array()) throw JsonError("relation: \"pairs\" must be an array");
  BisimRelation z{carrier, {}};
  for (const auto& e : j["pairs"]) {
    auto p = as_pair(e, "pairs");
    for (const auto* w : {&p.first, &p.second})
      if (!carrier.find(*w)) throw JsonError("pairs: world \"" + *w + "\" is not in the carrier");
    z.pairs.insert(std::move(p));
  }
  return z;
}

std::string relation_to_json(const BisimRelation& z) {
  std::string out = "{\"pairs\": [";
  bool first = true;
  for (const auto& [a, b] : z.pairs) {
    out += (first ? "" : ",") + string_list({a, b});
    first = false;
  }
  return out + "]}";
}

std::string verdict_to_json(const Verdict& v) {
  std::string out = "{\"answer\": ";
  out += v.answer ? (*v.answer ? "true" : "false") : "null";
  out += ", \"method\": " + json_quote(to_string(v.method));
  if (v.bound) out += ", \"bound\": " + std::to_string(*v.bound);
  if (v.witness) out += ", \"witness\": " + model_to_json(v.witness->model, v.witness->point);
  return out + "}";
}

}  // namespace lea

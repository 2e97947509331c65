#include "trizone/config.hpp"

#include <cmath>
#include <fstream>
#include <json.hpp>
#include <set>
#include <sstream>

namespace trizone {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& msg) { throw Error(ErrorKind::ConfigError, msg); }

void only_keys(const json& j, const std::string& where, const std::set<std::string>& allowed) {
  if (!j.is_object()) fail(where + ": expected an object");
  for (const auto& item : j.items()) {
    if (!allowed.count(item.key())) fail(where + "." + item.key() + ": unknown field");
  }
}

double number(const json& j, const std::string& where, const std::string& key, bool required) {
  if (!j.contains(key)) {
    if (required) fail(where + "." + key + ": missing field");
    return 0.0;
  }
  const json& v = j.at(key);
  if (!v.is_number()) fail(where + "." + key + ": expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) fail(where + "." + key + ": not finite");
  return d;
}

ZoneHamiltonian zone(const json& j, const std::string& where) {
  only_keys(j, where, {"a", "b", "c", "alpha", "beta"});
  return {number(j, where, "a", true), number(j, where, "b", true), number(j, where, "c", true),
          number(j, where, "alpha", true), number(j, where, "beta", true)};
}

ZonePerturbation perturbation(const json& j, const std::string& where) {
  only_keys(j, where, {"p", "q", "r", "s", "u", "v"});
  return {number(j, where, "p", false), number(j, where, "q", false), number(j, where, "r", false),
          number(j, where, "s", false), number(j, where, "u", false), number(j, where, "v", false)};
}

}  // namespace

SystemConfig parse_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    fail("line " + std::to_string(line) + ", column " + std::to_string(col) + ": malformed JSON");
  }
  only_keys(doc, "$", {"schema_version", "name", "zones", "perturbation", "epsilon"});
  if (!doc.contains("schema_version")) fail("$.schema_version: missing field");
  if (!doc["schema_version"].is_number_integer() || doc["schema_version"].get<int>() != kSchemaVersion) {
    fail("$.schema_version: unsupported version (expected " + std::to_string(kSchemaVersion) + ")");
  }
  SystemConfig cfg;
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) fail("$.name: expected a string");
    cfg.name = doc["name"].get<std::string>();
  }
  if (!doc.contains("zones")) fail("$.zones: missing field");
  const json& z = doc["zones"];
  only_keys(z, "$.zones", {"left", "center", "right"});
  for (const char* k : {"left", "center", "right"}) {
    if (!z.contains(k)) fail(std::string("$.zones.") + k + ": missing field");
  }
  ThreeZoneSystem& s = cfg.system;
  s.left = zone(z["left"], "$.zones.left");
  s.center = zone(z["center"], "$.zones.center");
  s.right = zone(z["right"], "$.zones.right");
  if (doc.contains("perturbation")) {
    const json& p = doc["perturbation"];
    only_keys(p, "$.perturbation", {"left", "center", "right"});
    if (p.contains("left")) s.left_pert = perturbation(p["left"], "$.perturbation.left");
    if (p.contains("center")) s.center_pert = perturbation(p["center"], "$.perturbation.center");
    if (p.contains("right")) s.right_pert = perturbation(p["right"], "$.perturbation.right");
  }
  s.epsilon = number(doc, "$", "epsilon", false);
  if (s.epsilon < 0.0 || s.epsilon >= 1.0) fail("$.epsilon: must lie in [0, 1)");
  return cfg;
}

SystemConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string config_to_json(const SystemConfig& cfg) {
  const auto zj = [](const ZoneHamiltonian& z) {
    return json{{"a", z.a}, {"b", z.b}, {"c", z.c}, {"alpha", z.alpha}, {"beta", z.beta}};
  };
  const auto pj = [](const ZonePerturbation& p) {
    return json{{"p", p.p}, {"q", p.q}, {"r", p.r}, {"s", p.s}, {"u", p.u}, {"v", p.v}};
  };
  const ThreeZoneSystem& s = cfg.system;
  json doc{{"schema_version", kSchemaVersion},
           {"name", cfg.name},
           {"zones", {{"left", zj(s.left)}, {"center", zj(s.center)}, {"right", zj(s.right)}}},
           {"perturbation", {{"left", pj(s.left_pert)}, {"center", pj(s.center_pert)}, {"right", pj(s.right_pert)}}},
           {"epsilon", s.epsilon}};
  return doc.dump(2) + "\n";
}

}  // namespace trizone

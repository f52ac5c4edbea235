#include "bcdy/report.hpp"

namespace bcdy {

using nlohmann::json;

json RunConfig::to_json() const {
  json j;
  j["algebra"] = kind_str(kind);
  j["N"] = N;
  j["level"] = critical_level ? std::string("crit") : rat_str(level);
  j["hord"] = trunc.hord;
  j["deg"] = trunc.deg;
  j["udeg"] = trunc.udeg;
  j["forder"] = trunc.forder;
  j["suite"] = suite;
  j["m"] = m;
  j["seed"] = seed;
  return j;
}

RunConfig RunConfig::from_json(const json& j) {
  RunConfig c;
  std::string alg = j.value("algebra", "o");
  if (alg == "o")
    c.kind = AlgebraKind::orthogonal;
  else if (alg == "sp")
    c.kind = AlgebraKind::symplectic;
  else
    throw ConfigError("unknown algebra kind: " + alg);
  c.N = j.value("N", 3);
  std::string lvl = j.value("level", "crit");
  if (lvl == "crit") {
    c.critical_level = true;
  } else {
    c.critical_level = false;
    c.level = rat_from_string(lvl);
  }
  c.trunc.hord = j.value("hord", 2);
  c.trunc.deg = j.value("deg", 3);
  c.trunc.udeg = j.value("udeg", 2);
  c.trunc.forder = j.value("forder", 8);
  c.suite = j.value("suite", "all");
  c.m = j.value("m", 2);
  c.seed = j.value("seed", static_cast<uint64_t>(0));
  return c;
}

int Report::passed() const {
  int n = 0;
  for (auto& c : checks) n += c.status == "pass";
  return n;
}
int Report::failed() const {
  int n = 0;
  for (auto& c : checks) n += c.status == "fail";
  return n;
}
int Report::errored() const {
  int n = 0;
  for (auto& c : checks) n += c.status == "error";
  return n;
}

json Report::to_json() const {
  json j;
  j["schema"] = kSchemaVersion;
  j["version"] = kArtifactVersion;
  j["config"] = config.to_json();
  j["checks"] = json::array();
  for (auto& c : checks) {
    json jc;
    jc["name"] = c.name;
    jc["identity"] = c.identity;
    jc["params"] = c.params;
    jc["status"] = c.status;
    if (c.expected_failure) jc["expected_failure"] = true;
    jc["probes"] = c.probes;
    jc["witnesses"] = json::array();
    for (auto& [where, value] : c.witnesses) {
      json w;
      w["where"] = where;
      w["value"] = value;
      jc["witnesses"].push_back(w);
    }
    if (config.timings) jc["millis"] = c.millis;
    j["checks"].push_back(jc);
  }
  j["summary"] = {{"pass", passed()}, {"fail", failed()}, {"error", errored()}};
  return j;
}

std::string Report::to_string() const { return to_json().dump(2) + "\n"; }

}  // namespace bcdy

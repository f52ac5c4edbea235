// Run configuration, check records and the JSON report. Reports are
// deterministic: exact rationals are serialized as "p/q" strings, iteration
// orders are fixed, and timings are emitted only on request so that repeated
// runs with the same configuration produce byte-identical files.
#pragma once

#include "bcdy/context.hpp"

#include <json.hpp>

#include <string>
#include <utility>
#include <vector>

namespace bcdy {

inline const char* kSchemaVersion = "bcdy-report/1";
inline const char* kArtifactVersion = "0.1.0";

struct RunConfig {
  AlgebraKind kind = AlgebraKind::orthogonal;
  int N = 3;
  bool critical_level = true;
  Rat level = Rat(0);
  Truncations trunc;
  std::string suite = "all";
  int m = 2;              // target index for emission commands
  uint64_t seed = 0;      // probe sampling seed
  bool timings = false;   // include timing section (off for byte-stable output)

  AlgebraContext context() const {
    return make_context(kind, N, critical_level, level, trunc);
  }

  nlohmann::json to_json() const;
  static RunConfig from_json(const nlohmann::json& j);
};

struct CheckRecord {
  std::string name;
  std::string identity;  // which identity or property the check exercises
  nlohmann::json params = nlohmann::json::object();
  std::string status;    // "pass" | "fail" | "error"
  bool expected_failure = false;
  long probes = 0;
  std::vector<std::pair<std::string, std::string>> witnesses;
  double millis = 0.0;

  bool ok() const { return status == "pass"; }
};

struct Report {
  RunConfig config;
  std::vector<CheckRecord> checks;

  int passed() const;
  int failed() const;
  int errored() const;
  nlohmann::json to_json() const;
  std::string to_string() const;  // pretty JSON with a trailing newline
};

}  // namespace bcdy

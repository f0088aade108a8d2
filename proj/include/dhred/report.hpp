#pragma once

#include "dhred/catalog.hpp"
#include "dhred/compat.hpp"
#include "dhred/lift.hpp"
#include "dhred/problem.hpp"
#include "dhred/reduction.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>

namespace dhred {

using Json = nlohmann::ordered_json;

struct RunOptions {
  std::uint64_t seed = 20240101;
  std::string frame = "standard";  // standard | boosted
  int kmax = 4;
  std::string compat_case;         // check-compat only
  std::string entry_shift;         // expression in u for the catalog's shifted entry
};

struct RunResult {
  int exit_code = 0;  // 0 pass, 1 check failed, 2 input error (set by the CLI)
  std::string text;
  Json json;
};

RunResult run_reduce(const ProblemFile& pf, const RunOptions& opt);
RunResult run_check_compat(const ProblemFile& pf, const RunOptions& opt);
RunResult run_lemmas(const ProblemFile& pf, const RunOptions& opt);
RunResult run_lift(const ProblemFile& pf, const RunOptions& opt);
RunResult run_catalog_command(const RunOptions& opt);

// JSON fragments (also used by tests)
Json to_json(const ZeroVerdict& v);
Json to_json(const CompatReport& r);
Json to_json(const Classification& c);
Json to_json(const LiftReport& r);

}  // namespace dhred

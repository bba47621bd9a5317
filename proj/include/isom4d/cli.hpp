#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "isom4d/catalog.hpp"
#include "isom4d/groupid.hpp"
#include "isom4d/rng.hpp"
#include "isom4d/serialize.hpp"

namespace isom4d {

/// Everything a command run depends on. Identical configurations (seed
/// included) produce byte-identical reports.
struct RunConfig {
  std::optional<GroupName> group;
  int case_id = 1;
  std::map<std::string, Rational> params;  // per-case overrides; defaults are all ones
  int samples = 200;
  int trials = 200;
  std::uint64_t seed = kDefaultSeed;
  std::string format = "table";  // table | json | csv
  std::string out_path;          // empty: write to stdout
  std::string catalog_path;      // catalog verify: algebra source file; empty: built-in
  SolWeights weights = SolWeights::defaults();
};

struct CommandResult {
  int exit_code = 0;       // 0 success, 1 mismatch/check failure, 2 invalid input
  std::string rendered;    // full report in the requested format
};

CommandResult cmd_catalog_verify(const RunConfig& cfg);
CommandResult cmd_catalog_export(const RunConfig& cfg);
CommandResult cmd_stabilizer(const RunConfig& cfg);
CommandResult cmd_reproduce(const RunConfig& cfg);

/// One row of the embedded expected table for `reproduce`.
struct ExpectedRow {
  GroupName group;
  int case_id;
  bool continuous;          // continuous stabilizer: compare dim and components
  GroupTypeKind kind;       // finite stabilizer: compare kind and order
  int order;                // finite order, or component count when continuous
  int dim;                  // identity component dimension
  std::string display;      // expected stabilizer, human readable
};

const std::vector<ExpectedRow>& expected_results();

/// Writes `rendered` to cfg.out_path when set; otherwise to stdout.
void deliver(const RunConfig& cfg, const std::string& rendered);

}  // namespace isom4d

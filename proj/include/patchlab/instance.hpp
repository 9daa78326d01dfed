#pragma once

#include <string>

#include "json.hpp"
#include "patchlab/patching.hpp"

namespace patchlab {

// Instance documents follow the patchlab-instance/1 schema, reports the
// patchlab-report/1 schema; see docs/schema.md.

struct RunOptions {
    bool check = false;
    std::string format = "machine";  // machine | table
    std::string seed_suite;          // overrides params.family for task=suite
    int limit_order = 24;
    long long max_candidates = 4000000;
    EdgeOp edge_op = EdgeOp::Definition;
    bool edge_op_set = false;  // CLI override of params.edgeOp
};

struct RunResult {
    nlohmann::json report;
    bool check_ok = true;
};

RunResult run_instance(const nlohmann::json& instance, const RunOptions& opts);

// Re-validates every witness of a report against the core modules.
bool verify_report(const nlohmann::json& instance, const nlohmann::json& report,
                   const RunOptions& opts, std::string* error);

std::string render_table(const nlohmann::json& report);

}  // namespace patchlab

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "camo/attack.hpp"
#include "camo/camouflage.hpp"

namespace camo {

inline constexpr const char* tool_version = "camo 1.0";

struct SweepPlan {
    std::vector<std::string> benchmarks;  // BENCH file paths
    std::vector<std::string> schemes;     // Scheme::parse strings
    std::vector<double> fractions;        // default 0.1 .. 1.0 step 0.1
    std::vector<std::uint64_t> seeds;     // default {1, 2, 3}
    double budget_seconds = 600.0;        // desk-scale default
    std::uint64_t iteration_budget = 0;
    int workers = 0;  // 0 = hardware cores - 1
    std::string output_dir = "sweep_out";
    CamoOptions camo;

    static SweepPlan from_json(const std::string& text);
    static SweepPlan from_json_file(const std::string& path);
};

struct SweepRow {
    std::string benchmark;
    std::string scheme;
    double fraction = 0.0;
    std::uint64_t seed = 0;
    std::string status;  // Solved | TimeOut | BudgetExceeded | Error
    std::uint64_t dip_count = 0;
    std::uint64_t oracle_queries = 0;
    std::uint64_t final_clauses = 0;
    double wall_seconds = 0.0;
    int key_length = 0;
    std::string error;
};

struct SweepReport {
    std::vector<SweepRow> rows;  // one per cell, plan order
    int executed = 0;
    int skipped = 0;  // completed in an earlier run, loaded from cache
};

// Runs every (benchmark, fraction, seed, scheme) cell. Selection sets are
// computed once per (benchmark, fraction, seed) and shared across schemes;
// finished cells are cached under output_dir/cells by content hash, so a
// rerun performs no new attacks and never rewrites existing rows.
SweepReport run_sweep(const SweepPlan& plan, std::ostream* log = nullptr);

std::string sweep_report_csv(const SweepPlan& plan, const SweepReport& report);
std::string sweep_summary_csv(const SweepReport& report);

// Median over per-seed dip counts for one (benchmark, scheme, fraction).
double median_dips(const SweepReport& report, const std::string& benchmark,
                   const std::string& scheme, double fraction);

}  // namespace camo

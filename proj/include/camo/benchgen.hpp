#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "camo/netlist.hpp"

namespace camo {

// Deterministic synthetic benchmark with an exact interface and gate count.
// Stand-ins for the public suites when those files are not available; the
// fetch script in scripts/ downloads the real ones.
struct BenchProfile {
    std::string name;
    int num_inputs = 8;
    int num_outputs = 4;
    int num_gates = 100;
    std::uint64_t seed = 1;
    double repeater_share = 0.30;  // INV/BUF fraction
};

Netlist generate_benchmark(const BenchProfile& profile);

// Interface/gate-count profiles matching the published characteristics of
// well-known benchmarks, plus small desk_* circuits for sweeps.
std::optional<BenchProfile> standard_profile(std::string_view name);

// The ISCAS-85 c17 netlist (6 NAND gates), bundled verbatim.
extern const char* const c17_bench_text;

}  // namespace camo

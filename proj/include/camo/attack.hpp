#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "camo/lock.hpp"
#include "camo/netlist.hpp"
#include "camo/sat/dimacs.hpp"
#include "camo/sat/solver.hpp"
#include "camo/sim.hpp"

namespace camo {

// Gate-consistency encoding of a locked circuit; one variable per net
// (1-based, DIMACS style). 2-input AND/OR family gates contribute 3
// clauses, XOR/XNOR 4, NOT/BUF 2, constants a unit clause.
struct TseitinMaps {
    std::vector<int> pi_vars;   // circuit inputs, key inputs excluded
    std::vector<int> po_vars;
    std::vector<int> key_vars;
};
std::pair<sat::Cnf, TseitinMaps> tseitin(const LockedCircuit& locked);

// Two copies of the locked circuit over shared inputs with independent key
// sets; assuming `diff_lit` forces some output to differ.
struct Miter {
    sat::Solver solver;
    std::vector<sat::Var> pi_vars;
    std::vector<sat::Var> k1_vars, k2_vars;
    sat::Lit diff_lit;
};
Miter build_miter(const LockedCircuit& locked);

struct AttackConfig {
    double budget_seconds = 172800.0;   // 48h, the paper's time-out
    std::uint64_t iteration_budget = 0; // 0 = unlimited
    double clause_log_seconds = 10.0;
};

struct ClauseLogRow {
    std::uint64_t iteration = 0;
    double wall_seconds = 0.0;
    std::uint64_t clause_count = 0;
    std::uint64_t variable_count = 0;
    std::string dip_hex;  // empty on time-sampled rows
};

struct AttackResult {
    enum class Status { Solved, TimeOut, BudgetExceeded };
    Status status = Status::TimeOut;
    Key recovered_key;
    std::uint64_t dip_count = 0;
    std::uint64_t oracle_queries = 0;
    std::vector<ClauseLogRow> clause_log;
    double wall_seconds = 0.0;
    bool equivalence_verified = false;
    sat::SolveStats solver_stats;
};

const char* to_string(AttackResult::Status s);

// Oracle-guided de-camouflaging: solve the miter for a distinguishing input
// pattern, query the oracle, constrain both copies with a fresh unfolded
// circuit instance per copy, repeat. On miter UNSAT the accumulated I/O
// constraints are solved for a key, which must pass equivalence_check
// before the result is reported Solved.
AttackResult dip_loop(const LockedCircuit& locked, const Netlist& oracle,
                      const AttackConfig& config);

struct EquivalenceResult {
    bool equivalent = false;
    BitVector counterexample;  // over a's primary-input order
};

// Miter-based combinational equivalence; counterexamples are re-checked
// against both simulators before being returned. Inputs are paired by name.
EquivalenceResult equivalence_check(const Netlist& a, const Netlist& b,
                                    double budget_seconds = 0.0);

std::string clause_log_csv(const AttackResult& result);
std::string attack_report(const AttackResult& result, const std::string& locked_name,
                          const std::string& oracle_name, const AttackConfig& config);

namespace detail {
std::vector<sat::Var> encode_circuit(sat::Solver& solver, const Netlist& nl,
                                     const std::vector<sat::Var>* shared);
using StructMap = std::map<std::vector<int>, sat::Var>;
std::vector<sat::Var> encode_circuit_hashed(sat::Solver& solver, const Netlist& nl,
                                            const std::vector<sat::Var>* shared,
                                            StructMap& seen);
}

}  // namespace camo

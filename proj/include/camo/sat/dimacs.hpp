#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "camo/sat/solver.hpp"

namespace camo::sat {

// Plain CNF container for file exchange. Variables are 1-based in DIMACS
// and 0-based in the solver; Cnf stores DIMACS-style signed ints.
struct Cnf {
    int num_vars = 0;
    std::vector<std::vector<int>> clauses;
    std::map<std::string, int> names;  // label -> 1-based variable

    void add(std::vector<int> clause) { clauses.push_back(std::move(clause)); }

    // Loads all clauses into a fresh solver; returns false if UNSAT at level 0.
    bool load_into(Solver& solver) const;
};

Cnf snapshot_cnf(const Solver& solver);

std::string to_dimacs(const Cnf& cnf);
Cnf from_dimacs(std::string_view text);

}  // namespace camo::sat

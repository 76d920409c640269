#include "camo/sat/dimacs.hpp"

#include <cstdlib>
#include <sstream>

#include "camo/netlist.hpp"  // camo::Error

namespace camo::sat {

bool Cnf::load_into(Solver& solver) const {
    while (solver.num_vars() < num_vars)
        solver.new_var();
    std::vector<Lit> lits;
    bool ok = true;
    for (const auto& clause : clauses) {
        lits.clear();
        for (int x : clause)
            lits.push_back(make_lit(std::abs(x) - 1, x < 0));
        ok = solver.add_clause(lits) && ok;
    }
    return ok;
}

Cnf snapshot_cnf(const Solver& solver) {
    Cnf cnf;
    cnf.num_vars = solver.num_vars();
    for (const auto& clause : solver.snapshot_clauses()) {
        std::vector<int> row;
        row.reserve(clause.size());
        for (Lit p : clause)
            row.push_back(sign_of(p) ? -(var_of(p) + 1) : var_of(p) + 1);
        cnf.clauses.push_back(std::move(row));
    }
    return cnf;
}

std::string to_dimacs(const Cnf& cnf) {
    std::string out;
    for (const auto& [name, v] : cnf.names)
        out += "c var " + std::to_string(v) + " " + name + "\n";
    out += "p cnf " + std::to_string(cnf.num_vars) + " " +
           std::to_string(cnf.clauses.size()) + "\n";
    for (const auto& clause : cnf.clauses) {
        for (int x : clause) {
            out += std::to_string(x);
            out += ' ';
        }
        out += "0\n";
    }
    return out;
}

Cnf from_dimacs(std::string_view text) {
    Cnf cnf;
    std::istringstream in{std::string(text)};
    std::string line;
    bool have_header = false;
    long declared_clauses = -1;
    int line_no = 0;
    std::vector<int> current;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty())
            continue;
        if (line[0] == 'c') {
            std::istringstream ls(line);
            std::string c, kw, name;
            int v;
            if (ls >> c >> kw >> v >> name && kw == "var")
                cnf.names[name] = v;
            continue;
        }
        if (line[0] == 'p') {
            std::istringstream ls(line);
            std::string p, fmt;
            if (!(ls >> p >> fmt >> cnf.num_vars >> declared_clauses) || fmt != "cnf")
                throw Error("malformed DIMACS header at line " + std::to_string(line_no));
            if (cnf.num_vars < 0 || declared_clauses < 0)
                throw Error("malformed DIMACS header at line " + std::to_string(line_no));
            have_header = true;
            continue;
        }
        if (!have_header)
            throw Error("DIMACS clause before header at line " + std::to_string(line_no));
        std::istringstream ls(line);
        int x;
        while (ls >> x) {
            if (x == 0) {
                cnf.clauses.push_back(current);
                current.clear();
            } else {
                if (std::abs(x) > cnf.num_vars)
                    throw Error("DIMACS literal " + std::to_string(x) +
                                " out of range at line " + std::to_string(line_no));
                current.push_back(x);
            }
        }
        if (!ls.eof())
            throw Error("malformed DIMACS literal at line " + std::to_string(line_no));
    }
    if (!have_header)
        throw Error("missing DIMACS header");
    if (!current.empty())
        throw Error("unterminated DIMACS clause at end of file");
    if (declared_clauses >= 0 &&
        static_cast<long>(cnf.clauses.size()) != declared_clauses)
        throw Error("DIMACS clause count mismatch: header says " +
                    std::to_string(declared_clauses) + ", found " +
                    std::to_string(cnf.clauses.size()));
    return cnf;
}

}  // namespace camo::sat

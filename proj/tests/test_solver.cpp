#include <doctest.h>

#include "camo/sat/dimacs.hpp"
#include "camo/sat/solver.hpp"
#include "helpers.hpp"

using namespace camo;
using namespace camo::sat;

namespace {

Lit lit(int dimacs) { return make_lit(std::abs(dimacs) - 1, dimacs < 0); }

// mixed-density random instance; returns DIMACS-style clauses
std::vector<std::vector<int>> random_instance(Rng& rng, int num_vars, int num_clauses) {
    std::vector<std::vector<int>> clauses;
    for (int i = 0; i < num_clauses; ++i) {
        int len = 1 + static_cast<int>(rng.below(4));
        std::vector<int> cl;
        for (int j = 0; j < len; ++j) {
            int v = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(num_vars)));
            cl.push_back(rng.below(2) ? v : -v);
        }
        clauses.push_back(std::move(cl));
    }
    return clauses;
}

void load(Solver& s, int num_vars, const std::vector<std::vector<int>>& clauses) {
    for (int i = 0; i < num_vars; ++i)
        s.new_var();
    std::vector<Lit> lits;
    for (const auto& cl : clauses) {
        lits.clear();
        for (int x : cl)
            lits.push_back(lit(x));
        s.add_clause(lits);
    }
}

}  // namespace

TEST_CASE("trivial sat and unsat") {
    Solver s;
    s.new_var();
    s.new_var();
    s.add_clause({lit(1), lit(2)});
    s.add_clause({lit(-1)});
    SolveOutcome out = s.solve();
    REQUIRE(out.status == Status::Satisfiable);
    CHECK(out.model[0] == 0);
    CHECK(out.model[1] == 1);

    s.add_clause({lit(-2)});
    CHECK(s.solve().status == Status::Unsatisfiable);
}

TEST_CASE("unit clauses force the model") {
    Solver s;
    for (int i = 0; i < 4; ++i)
        s.new_var();
    s.add_clause({lit(1)});
    s.add_clause({lit(-2)});
    s.add_clause({lit(3)});
    s.add_clause({lit(-4)});
    SolveOutcome out = s.solve();
    REQUIRE(out.status == Status::Satisfiable);
    CHECK(out.model == std::vector<std::uint8_t>{1, 0, 1, 0});
}

TEST_CASE("unallocated variable is an error") {
    Solver s;
    s.new_var();
    CHECK_THROWS_AS(s.add_clause({lit(2)}), Error);
}

TEST_CASE("pigeonhole 4 into 3 is unsatisfiable") {
    // var p(i,h) = pigeon i in hole h, 1-based encoding below
    auto var = [](int pigeon, int hole) { return pigeon * 3 + hole + 1; };
    std::vector<std::vector<int>> clauses;
    for (int p = 0; p < 4; ++p)
        clauses.push_back({var(p, 0), var(p, 1), var(p, 2)});
    for (int h = 0; h < 3; ++h)
        for (int p1 = 0; p1 < 4; ++p1)
            for (int p2 = p1 + 1; p2 < 4; ++p2)
                clauses.push_back({-var(p1, h), -var(p2, h)});
    // confirmed against exhaustive enumeration of all 2^12 assignments
    CHECK(!testing::brute_force_sat(12, clauses));
    Solver s;
    load(s, 12, clauses);
    CHECK(s.solve().status == Status::Unsatisfiable);
}

TEST_CASE("assumptions do not change the clause set") {
    Solver s;
    s.new_var();
    s.add_clause({lit(1)});
    CHECK(s.solve({lit(-1)}).status == Status::Unsatisfiable);
    SolveOutcome out = s.solve();
    REQUIRE(out.status == Status::Satisfiable);
    CHECK(out.model[0] == 1);
}

TEST_CASE("random instances agree with brute force") {
    Rng rng(2024);
    int disagreements = 0;
    for (int round = 0; round < 300; ++round) {
        int num_vars = 3 + static_cast<int>(rng.below(12));
        int num_clauses = static_cast<int>(rng.below(60)) + 1;
        auto clauses = random_instance(rng, num_vars, num_clauses);
        bool expect = testing::brute_force_sat(num_vars, clauses);
        Solver s;
        load(s, num_vars, clauses);
        SolveOutcome out = s.solve();
        REQUIRE(out.status != Status::Interrupted);
        if ((out.status == Status::Satisfiable) != expect)
            ++disagreements;
        if (out.status == Status::Satisfiable) {
            // model must satisfy every clause (checked independently here)
            for (const auto& cl : clauses) {
                bool sat = false;
                for (int x : cl) {
                    bool val = out.model[static_cast<std::size_t>(std::abs(x) - 1)];
                    if (x < 0 ? !val : val)
                        sat = true;
                }
                REQUIRE(sat);
            }
        }
    }
    CHECK(disagreements == 0);
}

TEST_CASE("learning does not change satisfiability") {
    Rng rng(555);
    for (int round = 0; round < 120; ++round) {
        int num_vars = 4 + static_cast<int>(rng.below(8));
        auto clauses = random_instance(rng, num_vars, 20 + static_cast<int>(rng.below(25)));
        Solver with, without;
        load(with, num_vars, clauses);
        load(without, num_vars, clauses);
        without.set_learning(false);
        CHECK(with.solve().status == without.solve().status);
    }
}

TEST_CASE("budget interrupts the search") {
    // pigeonhole 8/7 takes well over 50 conflicts
    auto var = [](int p, int h) { return p * 7 + h + 1; };
    Solver s;
    std::vector<std::vector<int>> clauses;
    for (int p = 0; p < 8; ++p) {
        std::vector<int> cl;
        for (int h = 0; h < 7; ++h)
            cl.push_back(var(p, h));
        clauses.push_back(cl);
    }
    for (int h = 0; h < 7; ++h)
        for (int p1 = 0; p1 < 8; ++p1)
            for (int p2 = p1 + 1; p2 < 8; ++p2)
                clauses.push_back({-var(p1, h), -var(p2, h)});
    load(s, 56, clauses);
    Budget b;
    b.max_conflicts = 50;
    CHECK(s.solve({}, b).status == Status::Interrupted);
    // still usable afterwards
    CHECK(s.solve().status == Status::Unsatisfiable);
}

TEST_CASE("clause count is monotone") {
    Solver s;
    s.new_var();
    s.new_var();
    std::uint64_t before = s.num_clauses();
    s.add_clause({lit(1), lit(2)});
    CHECK(s.num_clauses() == before + 1);
    s.add_clause({lit(1), lit(-1)});  // tautology still counts as an addition
    CHECK(s.num_clauses() == before + 2);
}

TEST_CASE("dimacs round trip") {
    Cnf cnf;
    cnf.num_vars = 2;
    cnf.add({1, 2});
    cnf.add({-1, 2});
    std::string text = to_dimacs(cnf);
    CHECK(text.find("p cnf 2 2") != std::string::npos);
    Cnf back = from_dimacs(text);
    CHECK(back.num_vars == 2);
    CHECK(back.clauses == cnf.clauses);
    CHECK(to_dimacs(back) == text);
}

TEST_CASE("dimacs errors") {
    CHECK_THROWS_AS(from_dimacs("p cnf x 2\n1 0\n"), Error);
    CHECK_THROWS_AS(from_dimacs("1 0\n"), Error);
    CHECK_THROWS_AS(from_dimacs("p cnf 1 1\n2 0\n"), Error);   // out of range
    CHECK_THROWS_AS(from_dimacs("p cnf 1 1\n1\n"), Error);     // unterminated
    CHECK_THROWS_AS(from_dimacs("p cnf 1 2\n1 0\n"), Error);   // count mismatch
}

TEST_CASE("exported instances solve identically when reloaded") {
    Rng rng(31337);
    for (int round = 0; round < 50; ++round) {
        int num_vars = 4 + static_cast<int>(rng.below(10));
        auto clauses = random_instance(rng, num_vars, 15 + static_cast<int>(rng.below(30)));
        Solver original;
        load(original, num_vars, clauses);
        Status st = original.solve().status;

        Cnf cnf = snapshot_cnf(original);
        Cnf back = from_dimacs(to_dimacs(cnf));
        CHECK(back.clauses.size() == cnf.clauses.size());
        // fresh solver, reversed clause order
        Solver fresh;
        for (int i = 0; i < back.num_vars; ++i)
            fresh.new_var();
        for (auto it = back.clauses.rbegin(); it != back.clauses.rend(); ++it) {
            std::vector<Lit> lits;
            for (int x : *it)
                lits.push_back(lit(x));
            fresh.add_clause(lits);
        }
        CHECK(fresh.solve().status == st);
    }
}

#include "camo/attack.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <set>
#include <sstream>

namespace camo {

const char* to_string(AttackResult::Status s) {
    switch (s) {
    case AttackResult::Status::Solved: return "Solved";
    case AttackResult::Status::TimeOut: return "TimeOut";
    case AttackResult::Status::BudgetExceeded: return "BudgetExceeded";
    }
    return "?";
}

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// maps a's PI order onto b's, by name
std::vector<int> pi_permutation(const Netlist& a, const std::vector<NetId>& a_pis,
                                const Netlist& b, const std::vector<NetId>& b_pis,
                                const char* what) {
    if (a_pis.size() != b_pis.size())
        throw Error(std::string(what) + ": input counts differ (" +
                    std::to_string(a_pis.size()) + " vs " + std::to_string(b_pis.size()) +
                    ")");
    std::vector<int> perm(a_pis.size(), -1);
    for (std::size_t i = 0; i < a_pis.size(); ++i) {
        const std::string& name = a.net(a_pis[i]).name;
        int found = -1;
        for (std::size_t j = 0; j < b_pis.size(); ++j) {
            if (b.net(b_pis[j]).name == name) {
                found = static_cast<int>(j);
                break;
            }
        }
        if (found < 0)
            throw Error(std::string(what) + ": input '" + name + "' has no counterpart");
        perm[i] = found;
    }
    return perm;
}

}  // namespace

AttackResult dip_loop(const LockedCircuit& locked, const Netlist& oracle,
                      const AttackConfig& config) {
    if (config.budget_seconds <= 0)
        throw Error("attack wall-time budget must be positive");
    auto t0 = std::chrono::steady_clock::now();

    std::vector<NetId> locked_pis = locked.circuit_inputs();
    std::vector<int> to_oracle_pi =
        pi_permutation(locked.netlist, locked_pis, oracle, oracle.primary_inputs(),
                       "oracle interface mismatch");
    std::vector<int> to_locked_po =
        pi_permutation(locked.netlist, locked.netlist.primary_outputs(), oracle,
                       oracle.primary_outputs(), "oracle interface mismatch (outputs)");

    Simulator oracle_sim(oracle);
    AttackResult result;
    Miter miter = build_miter(locked);
    sat::Solver& solver = miter.solver;

    auto log_row = [&](const std::string& dip_hex) {
        result.clause_log.push_back(ClauseLogRow{
            result.dip_count, seconds_since(t0), solver.num_clauses(),
            static_cast<std::uint64_t>(solver.num_vars()), dip_hex});
    };
    solver.set_progress_callback([&](const sat::Solver&) { log_row(""); },
                                 config.clause_log_seconds);
    log_row("");  // iteration 0: the plain miter

    std::set<std::string> seen_dips;
    const Netlist& nl = locked.netlist;
    int npi = static_cast<int>(locked_pis.size());

    for (;;) {
        double remaining = config.budget_seconds - seconds_since(t0);
        if (remaining <= 0) {
            result.status = AttackResult::Status::TimeOut;
            break;
        }
        sat::SolveOutcome out = solver.solve({miter.diff_lit}, {remaining, 0});
        result.solver_stats = solver.stats();
        if (out.status == sat::Status::Interrupted) {
            result.status = AttackResult::Status::TimeOut;
            break;
        }
        if (out.status == sat::Status::Unsatisfiable) {
            // no distinguishing pattern remains; any key consistent with the
            // recorded I/O behaves like the oracle on those patterns
            remaining = config.budget_seconds - seconds_since(t0);
            if (remaining <= 0) {
                result.status = AttackResult::Status::TimeOut;
                break;
            }
            sat::SolveOutcome fin = solver.solve({}, {remaining, 0});
            result.solver_stats = solver.stats();
            if (fin.status != sat::Status::Satisfiable) {
                result.status = AttackResult::Status::TimeOut;
                break;
            }
            Key key;
            key.bits.reserve(miter.k1_vars.size());
            for (sat::Var v : miter.k1_vars)
                key.bits.push_back(fin.model[static_cast<std::size_t>(v)]);
            Netlist recovered = resolve(locked, key);
            EquivalenceResult eq = equivalence_check(recovered, oracle);
            if (!eq.equivalent)
                throw Error("attack soundness violation: recovered key fails "
                            "equivalence check");
            result.recovered_key = std::move(key);
            result.equivalence_verified = true;
            result.status = AttackResult::Status::Solved;
            break;
        }

        // distinguishing input pattern
        BitVector dip(npi);
        for (int i = 0; i < npi; ++i)
            dip.set(i, out.model[static_cast<std::size_t>(
                          miter.pi_vars[static_cast<std::size_t>(i)])] != 0);
        std::string dip_bits = dip.to_bit_string();
        if (!seen_dips.insert(dip_bits).second)
            throw Error("internal error: repeated distinguishing input pattern");

        BitVector oracle_in(npi);
        for (int i = 0; i < npi; ++i)
            oracle_in.set(to_oracle_pi[static_cast<std::size_t>(i)], dip.get(i));
        BitVector oracle_out = oracle_sim.run(oracle_in);
        result.oracle_queries++;

        // constrain both key copies with fresh unfolded circuit instances
        for (const std::vector<sat::Var>* keys : {&miter.k1_vars, &miter.k2_vars}) {
            std::vector<sat::Var> shared(static_cast<std::size_t>(nl.num_nets()), -1);
            for (std::size_t i = 0; i < locked.key_nets.size(); ++i)
                shared[static_cast<std::size_t>(locked.key_nets[i])] = (*keys)[i];
            std::vector<sat::Var> vars = detail::encode_circuit(solver, nl, &shared);
            for (int i = 0; i < npi; ++i) {
                sat::Var v = vars[static_cast<std::size_t>(
                    locked_pis[static_cast<std::size_t>(i)])];
                solver.add_clause({sat::make_lit(v, !dip.get(i))});
            }
            const auto& pos = nl.primary_outputs();
            for (std::size_t i = 0; i < pos.size(); ++i) {
                bool y = oracle_out.get(to_locked_po[i]);
                sat::Var v = vars[static_cast<std::size_t>(pos[i])];
                solver.add_clause({sat::make_lit(v, !y)});
            }
        }
        result.dip_count++;
        log_row(dip.to_hex());

        if (config.iteration_budget && result.dip_count >= config.iteration_budget) {
            result.status = AttackResult::Status::BudgetExceeded;
            break;
        }
    }
    result.wall_seconds = seconds_since(t0);
    log_row("");
    return result;
}

EquivalenceResult equivalence_check(const Netlist& a, const Netlist& b,
                                    double budget_seconds) {
    std::vector<int> a_to_b_pi = pi_permutation(a, a.primary_inputs(), b,
                                                b.primary_inputs(), "interface mismatch");
    // outputs: by name when the name sets agree, positional otherwise
    std::vector<int> a_to_b_po;
    {
        std::vector<std::string> na, nb;
        for (NetId po : a.primary_outputs())
            na.push_back(a.net(po).name);
        for (NetId po : b.primary_outputs())
            nb.push_back(b.net(po).name);
        if (na.size() != nb.size())
            throw Error("interface mismatch: output counts differ");
        std::vector<std::string> sa = na, sb = nb;
        std::sort(sa.begin(), sa.end());
        std::sort(sb.begin(), sb.end());
        if (sa == sb && std::unique(sa.begin(), sa.end()) == sa.end()) {
            a_to_b_po = pi_permutation(a, a.primary_outputs(), b, b.primary_outputs(),
                                       "interface mismatch (outputs)");
        } else {
            a_to_b_po.resize(na.size());
            for (std::size_t i = 0; i < na.size(); ++i)
                a_to_b_po[i] = static_cast<int>(i);
        }
    }

    sat::Solver solver;
    detail::StructMap seen;
    std::vector<sat::Var> var_a = detail::encode_circuit_hashed(solver, a, nullptr, seen);
    std::vector<sat::Var> shared(static_cast<std::size_t>(b.num_nets()), -1);
    for (std::size_t i = 0; i < a.primary_inputs().size(); ++i) {
        NetId b_pi = b.primary_inputs()[static_cast<std::size_t>(a_to_b_pi[i])];
        shared[static_cast<std::size_t>(b_pi)] =
            var_a[static_cast<std::size_t>(a.primary_inputs()[i])];
    }
    std::vector<sat::Var> var_b = detail::encode_circuit_hashed(solver, b, &shared, seen);

    std::vector<sat::Lit> any;
    for (std::size_t i = 0; i < a.primary_outputs().size(); ++i) {
        sat::Var pa = var_a[static_cast<std::size_t>(a.primary_outputs()[i])];
        sat::Var pb = var_b[static_cast<std::size_t>(
            b.primary_outputs()[static_cast<std::size_t>(a_to_b_po[i])])];
        sat::Var d = solver.new_var();
        // d = pa xor pb
        solver.add_clause({sat::make_lit(d, true), sat::make_lit(pa, false),
                           sat::make_lit(pb, false)});
        solver.add_clause({sat::make_lit(d, true), sat::make_lit(pa, true),
                           sat::make_lit(pb, true)});
        solver.add_clause({sat::make_lit(d, false), sat::make_lit(pa, true),
                           sat::make_lit(pb, false)});
        solver.add_clause({sat::make_lit(d, false), sat::make_lit(pa, false),
                           sat::make_lit(pb, true)});
        any.push_back(sat::make_lit(d, false));
    }
    if (any.empty())
        return EquivalenceResult{true, {}};
    solver.add_clause(any);

    sat::SolveOutcome out = solver.solve({}, {budget_seconds, 0});
    if (out.status == sat::Status::Interrupted)
        throw Error("equivalence check exceeded its budget");
    if (out.status == sat::Status::Unsatisfiable)
        return EquivalenceResult{true, {}};

    int npi = static_cast<int>(a.primary_inputs().size());
    BitVector cex(npi);
    for (int i = 0; i < npi; ++i)
        cex.set(i, out.model[static_cast<std::size_t>(
                      var_a[static_cast<std::size_t>(a.primary_inputs()[i])])] != 0);
    // confirm with both simulators
    BitVector in_b(npi);
    for (int i = 0; i < npi; ++i)
        in_b.set(a_to_b_pi[static_cast<std::size_t>(i)], cex.get(i));
    BitVector ya = simulate(a, cex);
    BitVector yb = simulate(b, in_b);
    bool differs = false;
    for (std::size_t i = 0; i < a.primary_outputs().size(); ++i)
        if (ya.get(static_cast<int>(i)) !=
            yb.get(a_to_b_po[i]))
            differs = true;
    if (!differs)
        throw Error("internal error: SAT counterexample not confirmed by simulation");
    return EquivalenceResult{false, cex};
}

std::string clause_log_csv(const AttackResult& result) {
    std::ostringstream out;
    out << "iteration,wall_seconds,clause_count,variable_count,dip_hex\n";
    for (const ClauseLogRow& row : result.clause_log) {
        out << row.iteration << ',';
        out << std::fixed;
        out.precision(3);
        out << row.wall_seconds << ',' << row.clause_count << ',' << row.variable_count
            << ',' << row.dip_hex << '\n';
    }
    return out.str();
}

std::string attack_report(const AttackResult& result, const std::string& locked_name,
                          const std::string& oracle_name, const AttackConfig& config) {
    std::ostringstream out;
    out << "# camo-attack-report v1\n";
    out << "locked " << locked_name << "\n";
    out << "oracle " << oracle_name << "\n";
    out << "budget_seconds " << config.budget_seconds << "\n";
    out << "iteration_budget " << config.iteration_budget << "\n";
    out << "status " << to_string(result.status) << "\n";
    out << "dip_count " << result.dip_count << "\n";
    out << "oracle_queries " << result.oracle_queries << "\n";
    out << "wall_seconds " << result.wall_seconds << "\n";
    out << "equivalence_verified " << (result.equivalence_verified ? 1 : 0) << "\n";
    out << "key_length " << result.recovered_key.width() << "\n";
    if (result.status == AttackResult::Status::Solved)
        out << "key " << result.recovered_key.to_bit_string() << "\n";
    out << "decisions " << result.solver_stats.decisions << "\n";
    out << "conflicts " << result.solver_stats.conflicts << "\n";
    out << "propagations " << result.solver_stats.propagations << "\n";
    out << "learned " << result.solver_stats.learned << "\n";
    return out.str();
}

}  // namespace camo

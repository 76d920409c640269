#include <algorithm>
#include <map>

#include "camo/attack.hpp"

namespace camo {

namespace {

// Emits the gate-consistency clauses for one gate; sink receives each
// clause as a span of solver literals.
template <typename Sink>
void emit_gate(Sink&& sink, GateKind kind, sat::Var y, std::span<const sat::Var> in) {
    using sat::Lit;
    using sat::make_lit;
    std::vector<Lit> buf;
    auto clause = [&](std::initializer_list<Lit> lits) {
        sink(std::span<const Lit>(lits.begin(), lits.size()));
    };
    switch (kind) {
    case GateKind::And:
    case GateKind::Nand: {
        bool neg = kind == GateKind::Nand;
        buf.push_back(make_lit(y, neg));  // (y v ~a1 v ... ) for AND
        for (sat::Var a : in) {
            clause({make_lit(y, !neg), make_lit(a, false)});
            buf.push_back(make_lit(a, true));
        }
        sink(std::span<const Lit>(buf));
        break;
    }
    case GateKind::Or:
    case GateKind::Nor: {
        bool neg = kind == GateKind::Nor;
        buf.push_back(make_lit(y, !neg));  // (~y v a1 v ... ) for OR
        for (sat::Var a : in) {
            clause({make_lit(y, neg), make_lit(a, true)});
            buf.push_back(make_lit(a, false));
        }
        sink(std::span<const Lit>(buf));
        break;
    }
    case GateKind::Xor:
    case GateKind::Xnor: {
        bool neg = kind == GateKind::Xnor;
        sat::Var a = in[0], b = in[1];
        clause({make_lit(y, !neg), make_lit(a, false), make_lit(b, false)});
        clause({make_lit(y, !neg), make_lit(a, true), make_lit(b, true)});
        clause({make_lit(y, neg), make_lit(a, true), make_lit(b, false)});
        clause({make_lit(y, neg), make_lit(a, false), make_lit(b, true)});
        break;
    }
    case GateKind::Inv:
        clause({make_lit(y, false), make_lit(in[0], false)});
        clause({make_lit(y, true), make_lit(in[0], true)});
        break;
    case GateKind::Buf:
        clause({make_lit(y, false), make_lit(in[0], true)});
        clause({make_lit(y, true), make_lit(in[0], false)});
        break;
    case GateKind::Tie0: clause({make_lit(y, true)}); break;
    case GateKind::Tie1: clause({make_lit(y, false)}); break;
    }
}

}  // namespace

namespace detail {

// Appends one variable per net (reusing entries of `shared` when >= 0) and
// the consistency clauses for every gate. Returns net -> solver var.
std::vector<sat::Var> encode_circuit(sat::Solver& solver, const Netlist& nl,
                                     const std::vector<sat::Var>* shared) {
    std::vector<sat::Var> var(static_cast<std::size_t>(nl.num_nets()), -1);
    for (NetId n = 0; n < nl.num_nets(); ++n) {
        if (shared && (*shared)[static_cast<std::size_t>(n)] >= 0)
            var[static_cast<std::size_t>(n)] = (*shared)[static_cast<std::size_t>(n)];
        else
            var[static_cast<std::size_t>(n)] = solver.new_var();
    }
    std::vector<sat::Var> ins;
    auto sink = [&solver](std::span<const sat::Lit> lits) { solver.add_clause(lits); };
    for (GateId g = 0; g < nl.num_gates(); ++g) {
        const Gate& gate = nl.gate(g);
        ins.clear();
        for (NetId in : gate.inputs)
            ins.push_back(var[static_cast<std::size_t>(in)]);
        emit_gate(sink, gate.kind, var[static_cast<std::size_t>(gate.output)], ins);
    }
    return var;
}

// Hash-consing variant: structurally identical gates (same kind over the
// same variables) share one output variable and are encoded once. Circuits
// encoded through the same map collapse their common cones, which is what
// makes miters over near-identical copies cheap. All gate kinds here are
// commutative, so input variables are sorted in the key.
std::vector<sat::Var> encode_circuit_hashed(sat::Solver& solver, const Netlist& nl,
                                            const std::vector<sat::Var>* shared,
                                            StructMap& seen) {
    std::vector<sat::Var> var(static_cast<std::size_t>(nl.num_nets()), -1);
    std::vector<sat::Var> ins;
    std::vector<int> key;
    auto sink = [&solver](std::span<const sat::Lit> lits) { solver.add_clause(lits); };

    TopoResult topo = topo_order(nl);
    if (!topo.acyclic())
        throw Error("cannot encode a cyclic netlist");
    for (NetId n : nl.primary_inputs())
        var[static_cast<std::size_t>(n)] =
            (shared && (*shared)[static_cast<std::size_t>(n)] >= 0)
                ? (*shared)[static_cast<std::size_t>(n)]
                : solver.new_var();
    for (GateId g : topo.order) {
        const Gate& gate = nl.gate(g);
        ins.clear();
        for (NetId in : gate.inputs)
            ins.push_back(var[static_cast<std::size_t>(in)]);
        key.clear();
        key.push_back(static_cast<int>(gate.kind));
        key.insert(key.end(), ins.begin(), ins.end());
        std::sort(key.begin() + 1, key.end());
        auto it = seen.find(key);
        if (it != seen.end()) {
            var[static_cast<std::size_t>(gate.output)] = it->second;
            continue;
        }
        sat::Var y = solver.new_var();
        var[static_cast<std::size_t>(gate.output)] = y;
        emit_gate(sink, gate.kind, y, ins);
        seen.emplace(key, y);
    }
    return var;
}

}  // namespace detail

std::pair<sat::Cnf, TseitinMaps> tseitin(const LockedCircuit& locked) {
    const Netlist& nl = locked.netlist;
    sat::Cnf cnf;
    cnf.num_vars = nl.num_nets();
    for (NetId n = 0; n < nl.num_nets(); ++n)
        cnf.names[nl.net(n).name] = n + 1;

    std::vector<sat::Var> ins;
    auto sink = [&cnf](std::span<const sat::Lit> lits) {
        std::vector<int> row;
        row.reserve(lits.size());
        for (sat::Lit p : lits)
            row.push_back(sat::sign_of(p) ? -(sat::var_of(p) + 1) : sat::var_of(p) + 1);
        cnf.clauses.push_back(std::move(row));
    };
    for (GateId g = 0; g < nl.num_gates(); ++g) {
        const Gate& gate = nl.gate(g);
        ins.clear();
        for (NetId in : gate.inputs)
            ins.push_back(in);
        emit_gate(sink, gate.kind, gate.output, ins);
    }

    TseitinMaps maps;
    for (NetId pi : locked.circuit_inputs())
        maps.pi_vars.push_back(pi + 1);
    for (NetId po : nl.primary_outputs())
        maps.po_vars.push_back(po + 1);
    for (NetId k : locked.key_nets)
        maps.key_vars.push_back(k + 1);
    return {std::move(cnf), std::move(maps)};
}

Miter build_miter(const LockedCircuit& locked) {
    const Netlist& nl = locked.netlist;
    Miter m;
    detail::StructMap seen;
    std::vector<sat::Var> var_a = detail::encode_circuit_hashed(m.solver, nl, nullptr,
                                                                seen);

    std::vector<sat::Var> shared(static_cast<std::size_t>(nl.num_nets()), -1);
    for (NetId pi : locked.circuit_inputs())
        shared[static_cast<std::size_t>(pi)] = var_a[static_cast<std::size_t>(pi)];
    std::vector<sat::Var> var_b =
        detail::encode_circuit_hashed(m.solver, nl, &shared, seen);

    for (NetId pi : locked.circuit_inputs())
        m.pi_vars.push_back(var_a[static_cast<std::size_t>(pi)]);
    for (NetId k : locked.key_nets) {
        m.k1_vars.push_back(var_a[static_cast<std::size_t>(k)]);
        m.k2_vars.push_back(var_b[static_cast<std::size_t>(k)]);
    }

    // pairwise output XORs, OR-ed into the difference literal
    auto sink = [&m](std::span<const sat::Lit> lits) { m.solver.add_clause(lits); };
    std::vector<sat::Var> diffs;
    std::vector<sat::Var> ins(2);
    for (NetId po : nl.primary_outputs()) {
        sat::Var d = m.solver.new_var();
        ins[0] = var_a[static_cast<std::size_t>(po)];
        ins[1] = var_b[static_cast<std::size_t>(po)];
        emit_gate(sink, GateKind::Xor, d, ins);
        diffs.push_back(d);
    }
    sat::Var any = m.solver.new_var();
    if (diffs.empty()) {
        // no outputs: the two copies can never differ
        m.solver.add_clause({sat::make_lit(any, true)});
    } else {
        emit_gate(sink, GateKind::Or, any, diffs);
    }
    m.diff_lit = sat::make_lit(any, false);

    // branch on key bits first; once both key vectors are fixed the rest is
    // circuit propagation
    for (sat::Var v : m.k1_vars)
        m.solver.boost_activity(v, 1.0);
    for (sat::Var v : m.k2_vars)
        m.solver.boost_activity(v, 1.0);
    return m;
}

}  // namespace camo

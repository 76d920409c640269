#include "camo/lock.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "camo/bench.hpp"
#include "camo/detail/dynamic_dag.hpp"
#include "camo/rng.hpp"

namespace camo {

using detail::DynamicDag;

// ---------------------------------------------------------------------------
// Key

std::string Key::to_bit_string() const {
    std::string s;
    s.reserve(bits.size());
    for (std::uint8_t b : bits)
        s.push_back(b ? '1' : '0');
    return s;
}

Key Key::from_bit_string(std::string_view text) {
    Key k;
    k.bits.reserve(text.size());
    for (char c : text) {
        if (c != '0' && c != '1')
            throw Error("key bit string must contain only 0/1");
        k.bits.push_back(c == '1');
    }
    return k;
}

std::uint64_t Key::slice(int offset, int width) const {
    std::uint64_t v = 0;
    for (int i = 0; i < width; ++i)
        if (bits[static_cast<std::size_t>(offset + i)])
            v |= std::uint64_t{1} << i;
    return v;
}

void Key::set_slice(int offset, int width, std::uint64_t value) {
    for (int i = 0; i < width; ++i)
        bits[static_cast<std::size_t>(offset + i)] =
            static_cast<std::uint8_t>((value >> i) & 1);
}

std::vector<NetId> LockedCircuit::circuit_inputs() const {
    std::set<NetId> keys(key_nets.begin(), key_nets.end());
    std::vector<NetId> out;
    for (NetId pi : netlist.primary_inputs())
        if (!keys.count(pi))
            out.push_back(pi);
    return out;
}

// ---------------------------------------------------------------------------
// selector gadgets

namespace {

int width_for(int count) {
    int w = 0;
    while ((1 << w) < count)
        ++w;
    return w;
}

// Shared per-keybit inverters, created on demand.
struct KeyInverters {
    Netlist* nl;
    std::vector<NetId> inv;  // parallel to key nets, null_net until used

    NetId of(std::size_t bit_idx, NetId key_net) {
        if (inv[bit_idx] == null_net) {
            NetId n = nl->make_net("kn");
            nl->add_gate(GateKind::Inv, {key_net}, n);
            inv[bit_idx] = n;
        }
        return inv[bit_idx];
    }
};

// 2-input mux out = sel ? b : a, decomposed; writes to `out` when provided.
NetId emit_mux(Netlist& nl, NetId sel, NetId sel_inv, NetId a, NetId b, NetId out) {
    NetId t0 = nl.make_net("mx");
    NetId t1 = nl.make_net("mx");
    nl.add_gate(GateKind::And, {a, sel_inv}, t0);
    nl.add_gate(GateKind::And, {b, sel}, t1);
    if (out == null_net)
        out = nl.make_net("mx");
    nl.add_gate(GateKind::Or, {t0, t1}, out);
    return out;
}

// Binary selector over `cands` under key bits [offset, offset+width);
// code c >= cands.size() selects cands[c % cands.size()]. The tree root
// drives `out` when provided.
NetId emit_selector(Netlist& nl, KeyInverters& kinv, const std::vector<NetId>& key_nets,
                    const std::vector<NetId>& cands, int offset, int width, NetId out) {
    std::vector<NetId> padded(static_cast<std::size_t>(1) << width);
    for (std::size_t i = 0; i < padded.size(); ++i)
        padded[i] = cands[i % cands.size()];

    // level k muxes pairs differing in key bit k
    auto build = [&](auto&& self, std::size_t lo, int bits_left, NetId sink) -> NetId {
        if (bits_left == 0)
            return padded[lo];
        std::size_t half = std::size_t{1} << (bits_left - 1);
        NetId a = self(self, lo, bits_left - 1, null_net);
        NetId b = self(self, lo + half, bits_left - 1, null_net);
        std::size_t bit = static_cast<std::size_t>(offset + bits_left - 1);
        NetId sel = key_nets[bit];
        return emit_mux(nl, sel, kinv.of(bit, sel), a, b, sink);
    };
    NetId root = build(build, 0, width, out);
    if (out != null_net && root != out) {
        // zero-width tree: candidate list had one entry; alias through a BUF
        nl.add_gate(GateKind::Buf, {root}, out);
        return out;
    }
    return root;
}

void check_keyinput_names_free(const Netlist& nl, int count) {
    for (int i = 0; i < count; ++i) {
        std::string name = "keyinput" + std::to_string(i);
        if (nl.find_net(name))
            throw Error("netlist already contains a net named '" + name + "'");
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// lock (our schemes)

LockResult lock(const CamouflagedNetlist& camo) {
    LockResult result;
    result.locked.netlist = camo.base;
    Netlist& nl = result.locked.netlist;

    int total_bits = 0;
    for (const CandidateList& list : camo.lists)
        total_bits += width_for(static_cast<int>(list.candidates.size()));
    check_keyinput_names_free(nl, total_bits);
    for (int i = 0; i < total_bits; ++i)
        result.locked.key_nets.push_back(
            nl.add_primary_input("keyinput" + std::to_string(i)));
    result.key.bits.assign(static_cast<std::size_t>(total_bits), 0);

    KeyInverters kinv{&nl, std::vector<NetId>(static_cast<std::size_t>(total_bits),
                                              null_net)};
    int offset = 0;
    for (const CandidateList& list : camo.lists) {
        int count = static_cast<int>(list.candidates.size());
        int width = width_for(count);
        std::vector<NetId> cands;
        cands.reserve(list.candidates.size());
        for (const Candidate& c : list.candidates)
            cands.push_back(c.net);
        NetId sel_out =
            emit_selector(nl, kinv, result.locked.key_nets, cands, offset, width, null_net);
        nl.rewire_gate_input(list.gate, list.pin, sel_out);

        LockElement el;
        el.gate = list.gate;
        el.pin = list.pin;
        el.offset = offset;
        el.width = width;
        el.count = count;
        el.candidates = std::move(cands);
        result.locked.elements.push_back(std::move(el));
        result.key.set_slice(offset, width,
                             static_cast<std::uint64_t>(list.secret_index));
        offset += width;
    }
    nl.validate();
    return result;
}

// ---------------------------------------------------------------------------
// lock_prior_art

namespace {

NetId pick_loop_free_dummy(const Netlist& nl, DynamicDag& dag, GateId gate,
                           std::set<NetId>& used, Rng& rng, int radius) {
    for (int attempt = 0; attempt < 3; ++attempt) {
        std::vector<NetId> pool;
        if (attempt == 0)
            pool = neighborhood_nets(nl, gate, radius);
        else if (attempt == 1)
            pool = neighborhood_nets(nl, gate, radius * 2);
        else {
            pool.resize(static_cast<std::size_t>(nl.num_nets()));
            for (NetId n = 0; n < nl.num_nets(); ++n)
                pool[static_cast<std::size_t>(n)] = n;
        }
        rng.shuffle(pool);
        for (NetId d : pool) {
            if (used.count(d))
                continue;
            GateId drv = nl.net(d).driver;
            if (drv != no_driver && !dag.try_add_edge(drv, gate))
                continue;
            used.insert(d);
            return d;
        }
    }
    throw Error("no loop-free dummy net available near gate '" +
                nl.net(nl.gate(gate).output).name + "'");
}

}  // namespace

LockResult lock_prior_art(const Netlist& netlist, const SelectionSet& selection,
                          const Scheme& scheme, std::uint64_t seed,
                          const CamoOptions& options) {
    if (scheme.is_candidate_flavor())
        throw Error("scheme '" + scheme.to_string() +
                    "' is applied by the camouflage stage, not lock_prior_art");

    LockResult result;
    result.locked.netlist = netlist;
    Netlist& nl = result.locked.netlist;
    Rng rng(seed);

    // plan elements first so the key width is known before adding key inputs
    struct Planned {
        GateId gate;
        int pin;                       // -1: output side
        std::vector<NetId> candidates; // filled during emission for function sets
        int secret;
        bool function_choice;
    };
    std::vector<Planned> plan;

    switch (scheme.flavor) {
    case Scheme::Flavor::AmbiguousFunctionSet: {
        for (GateId g : selection.gates) {
            const Gate& gate = nl.gate(g);
            if (gate.inputs.size() != 2)
                continue;
            auto it = std::find(scheme.kinds.begin(), scheme.kinds.end(), gate.kind);
            if (it == scheme.kinds.end())
                continue;
            Planned p;
            p.gate = g;
            p.pin = -1;
            p.secret = static_cast<int>(it - scheme.kinds.begin());
            p.function_choice = true;
            plan.push_back(p);
        }
        break;
    }
    case Scheme::Flavor::MuxPair: {
        DynamicDag dag(nl);
        for (GateId g : selection.gates) {
            const Gate& gate = nl.gate(g);
            if (gate.kind == GateKind::Tie0 || gate.kind == GateKind::Tie1)
                continue;
            // the dummy only has to differ from the muxed wire itself
            Planned p;
            p.gate = g;
            p.function_choice = false;
            std::set<NetId> used;
            if (scheme.placement == Scheme::MuxPlacement::OutputSide) {
                p.pin = -1;
                used.insert(gate.output);
                NetId dummy = pick_loop_free_dummy(nl, dag, g, used, rng, options.radius);
                p.candidates = {gate.output, dummy};
            } else {
                p.pin = static_cast<int>(rng.below(gate.inputs.size()));
                NetId real = gate.inputs[static_cast<std::size_t>(p.pin)];
                used.insert(gate.output);
                used.insert(real);
                NetId dummy = pick_loop_free_dummy(nl, dag, g, used, rng, options.radius);
                p.candidates = {real, dummy};
            }
            NetId real_wire = p.candidates[0];
            if (rng.below(2))
                std::swap(p.candidates[0], p.candidates[1]);
            p.secret = p.candidates[0] == real_wire ? 0 : 1;
            plan.push_back(p);
        }
        break;
    }
    case Scheme::Flavor::DummyVia: {
        std::vector<std::pair<GateId, int>> pins;
        for (GateId g = 0; g < nl.num_gates(); ++g)
            for (int pin = 0; pin < static_cast<int>(nl.gate(g).inputs.size()); ++pin)
                pins.emplace_back(g, pin);
        if (scheme.dummy_wires > static_cast<int>(pins.size()))
            throw Error("dummy-via wire count " + std::to_string(scheme.dummy_wires) +
                        " exceeds the " + std::to_string(pins.size()) +
                        " available sink pins");
        std::vector<std::size_t> picks =
            rng.sample(pins.size(), static_cast<std::size_t>(scheme.dummy_wires));
        std::sort(picks.begin(), picks.end());
        DynamicDag dag(nl);
        for (std::size_t idx : picks) {
            auto [g, pin] = pins[idx];
            const Gate& gate = nl.gate(g);
            NetId real = gate.inputs[static_cast<std::size_t>(pin)];
            std::set<NetId> used;
            used.insert(gate.output);
            used.insert(real);
            NetId dummy = pick_loop_free_dummy(nl, dag, g, used, rng, options.radius);
            Planned p;
            p.gate = g;
            p.pin = pin;
            p.function_choice = false;
            p.candidates = {real, dummy};
            if (rng.below(2))
                std::swap(p.candidates[0], p.candidates[1]);
            p.secret = p.candidates[0] == real ? 0 : 1;
            plan.push_back(p);
        }
        break;
    }
    default: break;
    }

    int total_bits = 0;
    for (const Planned& p : plan) {
        int count = p.function_choice ? static_cast<int>(scheme.kinds.size())
                                      : static_cast<int>(p.candidates.size());
        total_bits += width_for(count);
    }
    check_keyinput_names_free(nl, total_bits);
    for (int i = 0; i < total_bits; ++i)
        result.locked.key_nets.push_back(
            nl.add_primary_input("keyinput" + std::to_string(i)));
    result.key.bits.assign(static_cast<std::size_t>(total_bits), 0);
    KeyInverters kinv{&nl, std::vector<NetId>(static_cast<std::size_t>(total_bits),
                                              null_net)};

    // helper to re-point a gate's output at a fresh net, leaving the old net
    // to be driven by the selector gadget
    auto detach_output = [&nl](GateId g) -> NetId {
        NetId fresh = nl.make_net("mx");
        nl.move_gate_output(g, fresh);
        return fresh;
    };

    int offset = 0;
    for (Planned& p : plan) {
        int count;
        std::vector<NetId> cands;
        NetId sink;
        if (p.function_choice) {
            const Gate& gate = nl.gate(p.gate);
            std::vector<NetId> inputs = gate.inputs;
            sink = gate.output;
            NetId own = detach_output(p.gate);
            for (GateKind k : scheme.kinds) {
                if (k == nl.gate(p.gate).kind) {
                    cands.push_back(own);
                } else {
                    NetId alt = nl.make_net("mx");
                    nl.add_gate(k, inputs, alt);
                    cands.push_back(alt);
                }
            }
            count = static_cast<int>(cands.size());
        } else if (p.pin < 0) {
            sink = nl.gate(p.gate).output;
            NetId own = detach_output(p.gate);
            cands = p.candidates;
            for (NetId& c : cands)
                if (c == sink)
                    c = own;
            count = static_cast<int>(cands.size());
        } else {
            sink = null_net;
            cands = p.candidates;
            count = static_cast<int>(cands.size());
        }

        int width = width_for(count);
        NetId out = emit_selector(nl, kinv, result.locked.key_nets, cands, offset, width,
                                  sink);
        if (p.pin >= 0)
            nl.rewire_gate_input(p.gate, p.pin, out);

        LockElement el;
        el.gate = p.gate;
        el.pin = p.pin;
        el.offset = offset;
        el.width = width;
        el.count = count;
        el.candidates = cands;
        result.locked.elements.push_back(std::move(el));
        result.key.set_slice(offset, width, static_cast<std::uint64_t>(p.secret));
        offset += width;
    }
    nl.validate();
    return result;
}

// ---------------------------------------------------------------------------
// resolve: key constant propagation

namespace {

enum class NetState : std::uint8_t { Unknown, Const0, Const1, Alias };

}  // namespace

Netlist resolve(const LockedCircuit& locked, const Key& key) {
    const Netlist& nl = locked.netlist;
    if (key.width() != locked.key_width())
        throw Error("key length " + std::to_string(key.width()) +
                    " does not match the " + std::to_string(locked.key_width()) +
                    " key inputs");

    std::vector<NetState> state(static_cast<std::size_t>(nl.num_nets()),
                                NetState::Unknown);
    std::vector<NetId> root(static_cast<std::size_t>(nl.num_nets()), null_net);
    for (std::size_t i = 0; i < locked.key_nets.size(); ++i)
        state[static_cast<std::size_t>(locked.key_nets[i])] =
            key.bits[i] ? NetState::Const1 : NetState::Const0;

    auto resolve_root = [&](NetId n) {
        while (state[static_cast<std::size_t>(n)] == NetState::Alias)
            n = root[static_cast<std::size_t>(n)];
        return n;
    };

    TopoResult topo = topo_order(nl);
    if (!topo.acyclic())
        throw Error("locked netlist is cyclic");

    struct Emitted {
        GateId original;
        GateKind kind;
        std::vector<NetId> inputs;  // locked-netlist net ids, alias-resolved
    };
    std::vector<Emitted> emitted;
    emitted.reserve(static_cast<std::size_t>(nl.num_gates()));

    for (GateId g : topo.order) {
        const Gate& gate = nl.gate(g);
        bool touched = false;
        for (NetId in : gate.inputs)
            if (state[static_cast<std::size_t>(in)] != NetState::Unknown)
                touched = true;
        if (!touched) {
            emitted.push_back(Emitted{g, gate.kind, gate.inputs});
            continue;
        }

        NetId out = gate.output;
        auto set_const = [&](bool v) {
            state[static_cast<std::size_t>(out)] = v ? NetState::Const1 : NetState::Const0;
        };
        auto set_alias = [&](NetId r) {
            state[static_cast<std::size_t>(out)] = NetState::Alias;
            root[static_cast<std::size_t>(out)] = resolve_root(r);
        };

        switch (gate.kind) {
        case GateKind::And:
        case GateKind::Nand:
        case GateKind::Or:
        case GateKind::Nor: {
            bool and_family = gate.kind == GateKind::And || gate.kind == GateKind::Nand;
            bool invert = gate.kind == GateKind::Nand || gate.kind == GateKind::Nor;
            bool killed = false;
            std::vector<NetId> live;
            for (NetId in : gate.inputs) {
                NetState s = state[static_cast<std::size_t>(in)];
                if (s == NetState::Const0) {
                    if (and_family)
                        killed = true;
                } else if (s == NetState::Const1) {
                    if (!and_family)
                        killed = true;
                } else {
                    live.push_back(resolve_root(in));
                }
            }
            if (killed) {
                set_const(and_family ? invert : !invert);
            } else if (live.empty()) {
                set_const(and_family ? !invert : invert);
            } else if (live.size() == 1) {
                if (invert)
                    emitted.push_back(Emitted{g, GateKind::Inv, {live[0]}});
                else
                    set_alias(live[0]);
            } else {
                emitted.push_back(Emitted{g, gate.kind, std::move(live)});
            }
            break;
        }
        case GateKind::Xor:
        case GateKind::Xnor: {
            bool odd = gate.kind == GateKind::Xnor;  // parity of constant 1s plus
                                                     // XNOR's own inversion
            std::vector<NetId> live;
            for (std::size_t i = 0; i < 2; ++i) {
                NetState s = state[static_cast<std::size_t>(gate.inputs[i])];
                if (s == NetState::Const1)
                    odd = !odd;
                else if (s != NetState::Const0)
                    live.push_back(resolve_root(gate.inputs[i]));
            }
            if (live.empty()) {
                set_const(odd);
            } else if (live.size() == 1) {
                if (odd)
                    emitted.push_back(Emitted{g, GateKind::Inv, {live[0]}});
                else
                    set_alias(live[0]);
            } else {
                emitted.push_back(
                    Emitted{g, odd ? GateKind::Xnor : GateKind::Xor, std::move(live)});
            }
            break;
        }
        case GateKind::Inv:
        case GateKind::Buf: {
            NetState s = state[static_cast<std::size_t>(gate.inputs[0])];
            bool inv = gate.kind == GateKind::Inv;
            if (s == NetState::Const0)
                set_const(inv);
            else if (s == NetState::Const1)
                set_const(!inv);
            else if (inv)
                emitted.push_back(Emitted{g, GateKind::Inv,
                                          {resolve_root(gate.inputs[0])}});
            else
                set_alias(gate.inputs[0]);
            break;
        }
        case GateKind::Tie0:
        case GateKind::Tie1:
            // fixed-value generators are kept as gates, not folded
            emitted.push_back(Emitted{g, gate.kind, {}});
            break;
        }
    }

    // rebuild, preserving the original gate order
    std::sort(emitted.begin(), emitted.end(),
              [](const Emitted& a, const Emitted& b) { return a.original < b.original; });
    Netlist out(nl.name());
    std::vector<NetId> map(static_cast<std::size_t>(nl.num_nets()), null_net);
    std::set<NetId> key_set(locked.key_nets.begin(), locked.key_nets.end());
    for (NetId pi : nl.primary_inputs()) {
        if (key_set.count(pi))
            continue;
        map[static_cast<std::size_t>(pi)] = out.add_primary_input(nl.net(pi).name);
    }
    for (const Emitted& e : emitted)
        map[static_cast<std::size_t>(nl.gate(e.original).output)] =
            out.add_net(nl.net(nl.gate(e.original).output).name);
    for (const Emitted& e : emitted) {
        std::vector<NetId> ins;
        ins.reserve(e.inputs.size());
        for (NetId in : e.inputs) {
            NetId m = map[static_cast<std::size_t>(in)];
            if (m == null_net)
                throw Error("internal error: resolve lost net '" + nl.net(in).name + "'");
            ins.push_back(m);
        }
        out.add_gate(e.kind, ins, map[static_cast<std::size_t>(nl.gate(e.original).output)]);
    }

    // primary outputs keep their names; constant or aliased outputs get a
    // materialized driver
    NetId const_net[2] = {null_net, null_net};
    auto materialize_const = [&](bool v) {
        if (const_net[v ? 1 : 0] == null_net) {
            NetId n = out.make_net(v ? "const1" : "const0");
            out.add_gate(v ? GateKind::Tie1 : GateKind::Tie0,
                         std::initializer_list<NetId>{}, n);
            const_net[v ? 1 : 0] = n;
        }
        return const_net[v ? 1 : 0];
    };
    for (NetId po : nl.primary_outputs()) {
        NetState s = state[static_cast<std::size_t>(po)];
        NetId mapped = null_net;
        if (s == NetState::Unknown) {
            mapped = map[static_cast<std::size_t>(po)];
        } else if (s == NetState::Alias) {
            NetId r = resolve_root(po);
            NetId src = map[static_cast<std::size_t>(r)];
            mapped = out.add_net(nl.net(po).name);
            out.add_gate(GateKind::Buf, {src}, mapped);
        } else {
            NetId src = materialize_const(s == NetState::Const1);
            mapped = out.add_net(nl.net(po).name);
            out.add_gate(GateKind::Buf, {src}, mapped);
        }
        if (mapped == null_net)
            throw Error("internal error: resolve lost output '" + nl.net(po).name + "'");
        out.mark_primary_output(mapped);
    }
    out.validate();
    return out;
}

// ---------------------------------------------------------------------------
// file formats

std::string write_locked_bench(const LockedCircuit& locked) {
    std::string s = "# camo-locked v1 keybits=" + std::to_string(locked.key_width()) + "\n";
    s += write_bench(locked.netlist);
    return s;
}

LockedCircuit parse_locked_bench(std::string_view text, std::string name) {
    LockedCircuit lc;
    lc.netlist = parse_bench(text, std::move(name));
    std::vector<std::pair<int, NetId>> keys;
    for (NetId pi : lc.netlist.primary_inputs()) {
        const std::string& n = lc.netlist.net(pi).name;
        if (n.rfind("keyinput", 0) == 0 && n.size() > 8 &&
            std::all_of(n.begin() + 8, n.end(),
                        [](unsigned char c) { return std::isdigit(c); }))
            keys.emplace_back(std::stoi(n.substr(8)), pi);
    }
    std::sort(keys.begin(), keys.end());
    for (std::size_t i = 0; i < keys.size(); ++i) {
        if (keys[i].first != static_cast<int>(i))
            throw Error("key inputs are not dense: missing keyinput" + std::to_string(i));
        lc.key_nets.push_back(keys[i].second);
    }
    return lc;
}

LockedCircuit parse_locked_bench_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    std::string base = path;
    std::size_t slash = base.find_last_of('/');
    if (slash != std::string::npos)
        base = base.substr(slash + 1);
    std::size_t dot = base.find_last_of('.');
    if (dot != std::string::npos && dot > 0)
        base = base.substr(0, dot);
    return parse_locked_bench(buf.str(), base);
}

std::string key_to_text(const Key& key, const LockedCircuit& locked) {
    std::string s = "# camo-key v1\n";
    s += "bits " + std::to_string(key.width()) + " " + key.to_bit_string() + "\n";
    const Netlist& nl = locked.netlist;
    for (const LockElement& el : locked.elements) {
        s += "element " + nl.net(nl.gate(el.gate).output).name + " " +
             (el.pin < 0 ? std::string("out") : std::to_string(el.pin)) + " " +
             std::to_string(el.offset) + " " + std::to_string(el.width) + " " +
             std::to_string(el.count) + "\n";
    }
    return s;
}

Key key_from_text(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#')
            continue;
        std::istringstream ls(line);
        std::string kw;
        ls >> kw;
        if (kw == "bits") {
            int n;
            std::string bits;
            if (!(ls >> n >> bits) || static_cast<int>(bits.size()) != n)
                throw Error("malformed key file bits line");
            return Key::from_bit_string(bits);
        }
        if (kw == "element")
            continue;
        throw Error("unknown key file directive '" + kw + "'");
    }
    throw Error("key file has no bits line");
}

}  // namespace camo

#include "camo/camouflage.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <json.hpp>

#include "camo/detail/dynamic_dag.hpp"

namespace camo {

using detail::DynamicDag;
using nlohmann::json;

// ---------------------------------------------------------------------------
// Scheme

Scheme Scheme::two_to_one() {
    Scheme s;
    s.flavor = Flavor::TwoToOne;
    return s;
}

Scheme Scheme::three_to_one() {
    Scheme s;
    s.flavor = Flavor::ThreeToOne;
    return s;
}

Scheme Scheme::extended_fixed(int m) {
    if (m < 1)
        throw Error("extended scheme needs at least one regular wire");
    Scheme s;
    s.flavor = Flavor::ExtendedFixed;
    s.regular_wires = m;
    return s;
}

Scheme Scheme::ambiguous(std::vector<GateKind> kinds) {
    if (kinds.size() < 2)
        throw Error("ambiguous-function scheme needs at least two kinds");
    for (GateKind k : kinds)
        if (min_arity(k) != 2)
            throw Error("ambiguous-function scheme kinds must be 2-input");
    Scheme s;
    s.flavor = Flavor::AmbiguousFunctionSet;
    s.kinds = std::move(kinds);
    return s;
}

Scheme Scheme::mux_pair(MuxPlacement placement) {
    Scheme s;
    s.flavor = Flavor::MuxPair;
    s.placement = placement;
    return s;
}

Scheme Scheme::dummy_via(int wires) {
    if (wires < 1)
        throw Error("dummy-via scheme needs a positive wire count");
    Scheme s;
    s.flavor = Flavor::DummyVia;
    s.dummy_wires = wires;
    return s;
}

std::string Scheme::to_string() const {
    switch (flavor) {
    case Flavor::TwoToOne: return "2to1";
    case Flavor::ThreeToOne: return "3to1";
    case Flavor::ExtendedFixed: return "extended:" + std::to_string(regular_wires);
    case Flavor::AmbiguousFunctionSet: {
        std::string s = "ambiguous:";
        for (std::size_t i = 0; i < kinds.size(); ++i) {
            if (i)
                s += ",";
            s += camo::to_string(kinds[i]);
        }
        return s;
    }
    case Flavor::MuxPair:
        return placement == MuxPlacement::OutputSide ? "muxpair:out" : "muxpair:in";
    case Flavor::DummyVia: return "dummyvia:" + std::to_string(dummy_wires);
    }
    return "?";
}

Scheme Scheme::parse(std::string_view text) {
    std::string head(text);
    std::string arg;
    std::size_t colon = head.find(':');
    if (colon != std::string::npos) {
        arg = head.substr(colon + 1);
        head = head.substr(0, colon);
    }
    if (head == "2to1")
        return two_to_one();
    if (head == "3to1")
        return three_to_one();
    if (head == "extended")
        return extended_fixed(arg.empty() ? 2 : std::stoi(arg));
    if (head == "xnn")
        return ambiguous({GateKind::Xor, GateKind::Nand, GateKind::Nor});
    if (head == "ambiguous") {
        std::vector<GateKind> kinds;
        std::size_t start = 0;
        while (start <= arg.size()) {
            std::size_t comma = arg.find(',', start);
            std::string tok = arg.substr(
                start, comma == std::string::npos ? std::string::npos : comma - start);
            auto k = gate_kind_from_string(tok);
            if (!k)
                throw Error("unknown gate kind '" + tok + "' in scheme");
            kinds.push_back(*k);
            if (comma == std::string::npos)
                break;
            start = comma + 1;
        }
        return ambiguous(std::move(kinds));
    }
    if (head == "muxpair") {
        if (arg.empty() || arg == "out")
            return mux_pair(MuxPlacement::OutputSide);
        if (arg == "in")
            return mux_pair(MuxPlacement::InputSide);
        throw Error("muxpair placement must be 'in' or 'out'");
    }
    if (head == "dummyvia") {
        if (arg.empty())
            throw Error("dummyvia needs a wire count, e.g. dummyvia:30");
        return dummy_via(std::stoi(arg));
    }
    throw Error("unknown scheme '" + std::string(text) + "'");
}

// ---------------------------------------------------------------------------
// Gate selection

SelectionSet select_gates(const Netlist& netlist, double fraction, std::uint64_t seed) {
    if (!(fraction > 0.0) || fraction > 1.0)
        throw Error("selection fraction must be in (0, 1]");
    std::vector<GateId> pool;
    for (GateId g = 0; g < netlist.num_gates(); ++g) {
        GateKind k = netlist.gate(g).kind;
        if (k != GateKind::Tie0 && k != GateKind::Tie1)
            pool.push_back(g);
    }
    std::size_t count =
        static_cast<std::size_t>(std::llround(fraction * static_cast<double>(pool.size())));
    Rng rng(seed);
    std::vector<std::size_t> picks = rng.sample(pool.size(), count);
    SelectionSet sel;
    sel.benchmark = netlist.name();
    sel.fraction = fraction;
    sel.seed = seed;
    sel.gates.reserve(picks.size());
    for (std::size_t i : picks)
        sel.gates.push_back(pool[i]);
    std::sort(sel.gates.begin(), sel.gates.end());
    return sel;
}


// ---------------------------------------------------------------------------
// Constant sources

namespace {

// Finds or creates the shared plain TIE gate for a constant value.
NetId plain_tie_net(Netlist& nl, bool value) {
    GateKind kind = value ? GateKind::Tie1 : GateKind::Tie0;
    for (GateId g = 0; g < nl.num_gates(); ++g)
        if (nl.gate(g).kind == kind)
            return nl.gate(g).output;
    NetId net = nl.make_net(value ? "const1" : "const0");
    nl.add_gate(kind, std::initializer_list<NetId>{}, net);
    return net;
}

constexpr GateKind inv_rewrites[4] = {GateKind::Nand, GateKind::Nor, GateKind::Xor,
                                      GateKind::Xnor};
constexpr bool inv_consts[4] = {true, false, true, false};
constexpr GateKind buf_rewrites[4] = {GateKind::And, GateKind::Or, GateKind::Xor,
                                      GateKind::Xnor};
constexpr bool buf_consts[4] = {true, false, false, true};

}  // namespace

TransformResult transform_inv_buf(const Netlist& netlist, double fraction,
                                  std::uint64_t seed) {
    if (fraction < 0.0 || fraction > 1.0)
        throw Error("transform fraction must be in [0, 1]");
    TransformResult result{netlist, {}};
    Netlist& nl = result.netlist;

    std::vector<GateId> repeaters;
    for (GateId g = 0; g < nl.num_gates(); ++g) {
        GateKind k = nl.gate(g).kind;
        if (k == GateKind::Inv || k == GateKind::Buf)
            repeaters.push_back(g);
    }
    std::size_t count = static_cast<std::size_t>(
        std::llround(fraction * static_cast<double>(repeaters.size())));
    Rng rng(seed);
    std::vector<std::size_t> picks = rng.sample(repeaters.size(), count);
    std::sort(picks.begin(), picks.end());

    for (std::size_t idx : picks) {
        GateId g = repeaters[idx];
        GateKind original = nl.gate(g).kind;
        std::size_t choice = static_cast<std::size_t>(rng.below(4));
        GateKind target;
        bool const_value;
        if (original == GateKind::Inv) {
            target = inv_rewrites[choice];
            const_value = inv_consts[choice];
        } else {
            target = buf_rewrites[choice];
            const_value = buf_consts[choice];
        }
        NetId tie = plain_tie_net(nl, const_value);
        nl.set_gate_kind(g, target);
        nl.append_gate_input(g, tie);
        result.log.push_back(TransformEntry{g, original, target, const_value});
    }
    return result;
}

TieResult insert_disguised_ties(const Netlist& netlist, int count, std::uint64_t seed) {
    if (count < 0)
        throw Error("disguised-tie count must be >= 0");
    TieResult result{netlist, {}};
    Netlist& nl = result.netlist;
    Rng rng(seed);
    constexpr GateKind kinds[6] = {GateKind::And, GateKind::Nand, GateKind::Or,
                                   GateKind::Nor, GateKind::Xor, GateKind::Xnor};
    for (int i = 0; i < count; ++i) {
        GateKind kind = kinds[rng.below(6)];
        bool c0 = rng.below(2) != 0;
        bool c1 = rng.below(2) != 0;
        bool inputs[2] = {c0, c1};
        bool value = eval_gate_const(kind, inputs);
        NetId in0 = plain_tie_net(nl, c0);
        NetId in1 = plain_tie_net(nl, c1);
        NetId out = nl.make_net("u");
        GateId g = nl.add_gate(kind, {in0, in1}, out);
        result.ties.push_back(DisguisedTie{g, value});
    }
    return result;
}

// ---------------------------------------------------------------------------
// apply_camouflage

namespace {

SourceTag net_constant_tag(const Netlist& nl, NetId net,
                           const std::vector<DisguisedTie>& ties) {
    GateId d = nl.net(net).driver;
    if (d == no_driver)
        return SourceTag::Regular;
    GateKind k = nl.gate(d).kind;
    if (k == GateKind::Tie0)
        return SourceTag::Const0;
    if (k == GateKind::Tie1)
        return SourceTag::Const1;
    for (const DisguisedTie& t : ties)
        if (t.gate == d)
            return t.value ? SourceTag::Const1 : SourceTag::Const0;
    return SourceTag::Regular;
}

}  // namespace

CamouflagedNetlist apply_camouflage(const Netlist& netlist, const SelectionSet& selection,
                                    const Scheme& scheme, std::uint64_t seed,
                                    const CamoOptions& options,
                                    std::vector<TransformEntry> transform_log,
                                    std::vector<DisguisedTie> ties) {
    if (!scheme.is_candidate_flavor())
        throw Error("apply_camouflage handles 2to1/3to1/extended schemes; scheme '" +
                    scheme.to_string() + "' is encoded by the lock stage");

    CamouflagedNetlist camo;
    camo.base = netlist;
    camo.scheme = scheme;
    camo.seed = seed;
    camo.options = options;
    camo.selection = selection;
    camo.transform_log = std::move(transform_log);
    camo.disguised_ties = std::move(ties);

    Netlist& nl = camo.base;
    Rng rng(seed);
    DynamicDag dag(nl);

    // constant-source pools, rotated so every disguised tie gets used once
    // there are enough slots
    std::vector<NetId> disguised_nets[2];
    for (const DisguisedTie& t : camo.disguised_ties)
        disguised_nets[t.value ? 1 : 0].push_back(nl.gate(t.gate).output);
    std::size_t rotate[2] = {0, 0};
    int dag_nodes = nl.num_gates();
    auto sync_dag = [&]() {
        while (dag_nodes < nl.num_gates()) {
            dag.add_node();
            ++dag_nodes;
        }
    };

    auto pick_disguised = [&](bool value, const std::set<NetId>& used) -> NetId {
        auto& pool = disguised_nets[value ? 1 : 0];
        std::size_t& rot = rotate[value ? 1 : 0];
        for (std::size_t step = 0; step < pool.size(); ++step) {
            NetId net = pool[(rot + step) % pool.size()];
            if (!used.count(net)) {
                rot = (rot + step + 1) % pool.size();
                return net;
            }
        }
        return null_net;
    };

    auto alloc_const = [&](bool value, std::set<NetId>& used) -> NetId {
        if (rng.coin(options.tie_prob)) {
            NetId net = pick_disguised(value, used);
            if (net != null_net)
                return net;
        }
        NetId plain = plain_tie_net(nl, value);
        sync_dag();
        if (!used.count(plain))
            return plain;
        NetId net = pick_disguised(value, used);
        if (net != null_net)
            return net;
        NetId fresh = nl.make_net(value ? "const1" : "const0");
        nl.add_gate(value ? GateKind::Tie1 : GateKind::Tie0,
                    std::initializer_list<NetId>{}, fresh);
        sync_dag();
        return fresh;
    };

    for (GateId g : selection.gates) {
        if (g < 0 || g >= nl.num_gates())
            throw Error("selection refers to unknown gate id " + std::to_string(g));
        const Gate& gate = nl.gate(g);
        if (gate.kind == GateKind::Tie0 || gate.kind == GateKind::Tie1)
            continue;

        std::set<NetId> used;
        used.insert(gate.output);
        for (NetId in : gate.inputs)
            used.insert(in);

        bool any_pin = false;
        for (int pin = 0; pin < static_cast<int>(nl.gate(g).inputs.size()); ++pin) {
            NetId real = nl.gate(g).inputs[static_cast<std::size_t>(pin)];
            SourceTag real_tag = net_constant_tag(nl, real, camo.disguised_ties);

            std::vector<Candidate> cands;
            int dummies_needed = 0;
            switch (scheme.flavor) {
            case Scheme::Flavor::TwoToOne:
                cands.push_back({real, real_tag});
                dummies_needed = 1;
                break;
            case Scheme::Flavor::ThreeToOne:
                cands.push_back({real, real_tag});
                dummies_needed = 2;
                break;
            case Scheme::Flavor::ExtendedFixed:
                if (real_tag == SourceTag::Regular) {
                    cands.push_back({alloc_const(false, used), SourceTag::Const0});
                    used.insert(cands.back().net);
                    cands.push_back({alloc_const(true, used), SourceTag::Const1});
                    used.insert(cands.back().net);
                    cands.push_back({real, SourceTag::Regular});
                    dummies_needed = scheme.regular_wires - 1;
                } else {
                    // the true input is a fixed value: the matching constant
                    // wire is the real one and all regular wires are dummies
                    bool real_value = real_tag == SourceTag::Const1;
                    cands.push_back({alloc_const(!real_value, used),
                                     real_value ? SourceTag::Const0 : SourceTag::Const1});
                    used.insert(cands.back().net);
                    cands.push_back({real, real_tag});
                    dummies_needed = scheme.regular_wires;
                }
                break;
            default: break;
            }

            // dummy wires: nearby nets first, widened on exhaustion, then any
            int found = 0;
            for (int attempt = 0; attempt < 3 && found < dummies_needed; ++attempt) {
                std::vector<NetId> pool;
                if (attempt == 0)
                    pool = neighborhood_nets(nl, g, options.radius);
                else if (attempt == 1)
                    pool = neighborhood_nets(nl, g, options.radius * 2);
                else {
                    pool.resize(static_cast<std::size_t>(nl.num_nets()));
                    for (NetId n = 0; n < nl.num_nets(); ++n)
                        pool[static_cast<std::size_t>(n)] = n;
                }
                rng.shuffle(pool);
                for (NetId d : pool) {
                    if (found >= dummies_needed)
                        break;
                    if (used.count(d))
                        continue;
                    GateId drv = nl.net(d).driver;
                    if (drv != no_driver && !dag.try_add_edge(drv, g))
                        continue;
                    cands.push_back({d, SourceTag::Regular});
                    used.insert(d);
                    ++found;
                }
            }
            if (found < dummies_needed)
                throw Error("camouflage: no acyclic unique dummy net available for gate '" +
                            nl.net(nl.gate(g).output).name + "' pin " +
                            std::to_string(pin));

            rng.shuffle(cands);
            int secret = -1;
            for (std::size_t i = 0; i < cands.size(); ++i)
                if (cands[i].net == real)
                    secret = static_cast<int>(i);
            CandidateList list;
            list.gate = g;
            list.pin = pin;
            list.candidates = std::move(cands);
            list.secret_index = secret;
            camo.lists.push_back(std::move(list));
            any_pin = true;
        }
        if (any_pin)
            camo.camouflaged_gates.push_back(g);
    }
    return camo;
}

CamouflagedNetlist camouflage_pipeline(const Netlist& original,
                                       const SelectionSet& selection,
                                       const Scheme& scheme, std::uint64_t seed,
                                       const CamoOptions& options) {
    TransformResult transformed =
        transform_inv_buf(original, options.inv_buf_fraction, mix_seed(seed, "transform"));
    int tie_count = std::max(
        options.min_disguised_ties,
        static_cast<int>(std::llround(options.disguised_tie_fraction *
                                      static_cast<double>(selection.gates.size()))));
    if (!scheme.is_candidate_flavor())
        tie_count = 0;
    TieResult tied =
        insert_disguised_ties(transformed.netlist, tie_count, mix_seed(seed, "ties"));
    return apply_camouflage(tied.netlist, selection, scheme, mix_seed(seed, "apply"),
                            options, std::move(transformed.log), std::move(tied.ties));
}

Netlist CamouflagedNetlist::resolve_assignment(std::span<const int> choice) const {
    if (!choice.empty() && choice.size() != lists.size())
        throw Error("assignment length does not match candidate-list count");
    Netlist out = base;
    for (std::size_t i = 0; i < lists.size(); ++i) {
        const CandidateList& list = lists[i];
        int idx = choice.empty() ? list.secret_index : choice[i];
        if (idx < 0 || idx >= static_cast<int>(list.candidates.size()))
            throw Error("candidate index out of range");
        out.rewire_gate_input(list.gate, list.pin,
                              list.candidates[static_cast<std::size_t>(idx)].net);
    }
    return out;
}

bool assignment_acyclic(const CamouflagedNetlist& camo, std::span<const int> choice) {
    const Netlist& nl = camo.base;
    int n = nl.num_gates();
    // static in-degrees and adjacency exclude camouflaged pins
    std::vector<char> is_camo_pin;  // indexed by gate*maxpin? use set per call
    std::vector<std::vector<int>> extra(static_cast<std::size_t>(n));
    std::vector<int> indeg(static_cast<std::size_t>(n), 0);
    std::vector<std::pair<GateId, int>> camo_pins;
    camo_pins.reserve(camo.lists.size());
    for (const CandidateList& l : camo.lists)
        camo_pins.emplace_back(l.gate, l.pin);
    std::sort(camo_pins.begin(), camo_pins.end());
    auto pin_is_camo = [&camo_pins](GateId g, int pin) {
        return std::binary_search(camo_pins.begin(), camo_pins.end(),
                                  std::make_pair(g, pin));
    };

    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
    for (GateId g = 0; g < n; ++g) {
        const Gate& gate = nl.gate(g);
        for (int pin = 0; pin < static_cast<int>(gate.inputs.size()); ++pin) {
            if (pin_is_camo(g, pin))
                continue;
            GateId d = nl.net(gate.inputs[static_cast<std::size_t>(pin)]).driver;
            if (d != no_driver) {
                adj[static_cast<std::size_t>(d)].push_back(g);
                indeg[static_cast<std::size_t>(g)]++;
            }
        }
    }
    for (std::size_t i = 0; i < camo.lists.size(); ++i) {
        const CandidateList& l = camo.lists[i];
        int idx = choice.empty() ? l.secret_index : choice[i];
        NetId net = l.candidates[static_cast<std::size_t>(idx)].net;
        GateId d = nl.net(net).driver;
        if (d != no_driver) {
            adj[static_cast<std::size_t>(d)].push_back(l.gate);
            indeg[static_cast<std::size_t>(l.gate)]++;
        }
    }
    std::vector<int> ready;
    ready.reserve(static_cast<std::size_t>(n));
    for (int g = 0; g < n; ++g)
        if (indeg[static_cast<std::size_t>(g)] == 0)
            ready.push_back(g);
    std::size_t head = 0;
    int seen = 0;
    while (head < ready.size()) {
        int g = ready[head++];
        ++seen;
        for (int s : adj[static_cast<std::size_t>(g)])
            if (--indeg[static_cast<std::size_t>(s)] == 0)
                ready.push_back(s);
    }
    (void)is_camo_pin;
    return seen == n;
}

// ---------------------------------------------------------------------------
// function counting by enumeration

std::vector<std::uint64_t> function_set(GateKind kind, const Scheme& scheme,
                                        int* num_vars_out) {
    if (min_arity(kind) != 2)
        throw Error("function_count supports 2-input gate kinds");
    if (!scheme.is_candidate_flavor())
        throw Error("function_count applies to 2to1/3to1/extended schemes");

    int regulars_per_input = 0;
    bool with_consts = false;
    switch (scheme.flavor) {
    case Scheme::Flavor::TwoToOne: regulars_per_input = 2; break;
    case Scheme::Flavor::ThreeToOne: regulars_per_input = 3; break;
    case Scheme::Flavor::ExtendedFixed:
        regulars_per_input = scheme.regular_wires;
        with_consts = true;
        break;
    default: break;
    }
    int num_vars = 2 * regulars_per_input;
    if (num_vars > 6)
        throw Error("function enumeration supports at most 3 regular wires per input");
    int rows = 1 << num_vars;
    std::uint64_t row_mask = rows == 64 ? ~std::uint64_t{0}
                                        : ((std::uint64_t{1} << rows) - 1);

    auto var_table = [&](int v) {
        std::uint64_t t = 0;
        for (int r = 0; r < rows; ++r)
            if ((r >> v) & 1)
                t |= std::uint64_t{1} << r;
        return t;
    };

    std::vector<std::uint64_t> in0, in1;
    if (with_consts) {
        in0.push_back(0);
        in0.push_back(row_mask);
        in1.push_back(0);
        in1.push_back(row_mask);
    }
    for (int i = 0; i < regulars_per_input; ++i) {
        in0.push_back(var_table(i));
        in1.push_back(var_table(regulars_per_input + i));
    }

    std::set<std::uint64_t> distinct;
    for (std::uint64_t a : in0) {
        for (std::uint64_t b : in1) {
            std::uint64_t f = 0;
            switch (kind) {
            case GateKind::And: f = a & b; break;
            case GateKind::Nand: f = ~(a & b); break;
            case GateKind::Or: f = a | b; break;
            case GateKind::Nor: f = ~(a | b); break;
            case GateKind::Xor: f = a ^ b; break;
            case GateKind::Xnor: f = ~(a ^ b); break;
            default: throw Error("function_count supports 2-input gate kinds");
            }
            distinct.insert(f & row_mask);
        }
    }
    if (num_vars_out)
        *num_vars_out = num_vars;
    return std::vector<std::uint64_t>(distinct.begin(), distinct.end());
}

int function_count(GateKind kind, const Scheme& scheme) {
    return static_cast<int>(function_set(kind, scheme).size());
}

// ---------------------------------------------------------------------------
// sidecar serialization

namespace {

const char* tag_name(SourceTag t) {
    switch (t) {
    case SourceTag::Regular: return "reg";
    case SourceTag::Const0: return "c0";
    case SourceTag::Const1: return "c1";
    }
    return "?";
}

SourceTag tag_from_name(const std::string& s) {
    if (s == "reg")
        return SourceTag::Regular;
    if (s == "c0")
        return SourceTag::Const0;
    if (s == "c1")
        return SourceTag::Const1;
    throw Error("unknown source tag '" + s + "'");
}

std::string gate_name(const Netlist& nl, GateId g) {
    return nl.net(nl.gate(g).output).name;
}

GateId gate_by_name(const Netlist& nl, const std::string& name) {
    auto net = nl.find_net(name);
    if (!net)
        throw Error("sidecar refers to unknown net '" + name + "'");
    GateId g = nl.net(*net).driver;
    if (g == no_driver)
        throw Error("sidecar net '" + name + "' is not a gate output");
    return g;
}

}  // namespace

std::string camo_to_json(const CamouflagedNetlist& camo) {
    const Netlist& nl = camo.base;
    json j;
    j["format"] = "camo-sidecar";
    j["version"] = 1;
    j["netlist"] = nl.name();
    j["scheme"] = camo.scheme.to_string();
    j["seed"] = camo.seed;
    j["options"] = {{"radius", camo.options.radius},
                    {"tie_prob", camo.options.tie_prob},
                    {"disguised_tie_fraction", camo.options.disguised_tie_fraction},
                    {"min_disguised_ties", camo.options.min_disguised_ties},
                    {"inv_buf_fraction", camo.options.inv_buf_fraction}};
    j["selection"] = {{"benchmark", camo.selection.benchmark},
                      {"fraction", camo.selection.fraction},
                      {"seed", camo.selection.seed}};
    json sel_gates = json::array();
    for (GateId g : camo.selection.gates)
        sel_gates.push_back(gate_name(nl, g));
    j["selection"]["gates"] = sel_gates;

    json log = json::array();
    for (const TransformEntry& t : camo.transform_log)
        log.push_back({{"gate", gate_name(nl, t.gate)},
                       {"original", to_string(t.original)},
                       {"rewritten", to_string(t.rewritten)},
                       {"const", t.const_input ? 1 : 0}});
    j["transform_log"] = log;

    json ties = json::array();
    for (const DisguisedTie& t : camo.disguised_ties)
        ties.push_back({{"gate", gate_name(nl, t.gate)}, {"value", t.value ? 1 : 0}});
    j["disguised_ties"] = ties;

    json lists = json::array();
    for (const CandidateList& l : camo.lists) {
        json cands = json::array();
        for (const Candidate& c : l.candidates)
            cands.push_back({{"net", nl.net(c.net).name}, {"tag", tag_name(c.tag)}});
        lists.push_back({{"gate", gate_name(nl, l.gate)},
                         {"pin", l.pin},
                         {"secret", l.secret_index},
                         {"candidates", cands}});
    }
    j["lists"] = lists;
    return j.dump(2) + "\n";
}

CamouflagedNetlist camo_from_json(const std::string& text, Netlist base) {
    json j = json::parse(text);
    if (j.value("format", "") != "camo-sidecar")
        throw Error("not a camo sidecar file");
    if (j.value("version", 0) != 1)
        throw Error("unsupported sidecar version");

    CamouflagedNetlist camo;
    camo.base = std::move(base);
    const Netlist& nl = camo.base;
    camo.scheme = Scheme::parse(j.at("scheme").get<std::string>());
    camo.seed = j.at("seed").get<std::uint64_t>();
    const json& opts = j.at("options");
    camo.options.radius = opts.at("radius").get<int>();
    camo.options.tie_prob = opts.at("tie_prob").get<double>();
    camo.options.disguised_tie_fraction = opts.at("disguised_tie_fraction").get<double>();
    camo.options.min_disguised_ties = opts.at("min_disguised_ties").get<int>();
    camo.options.inv_buf_fraction = opts.at("inv_buf_fraction").get<double>();
    const json& sel = j.at("selection");
    camo.selection.benchmark = sel.at("benchmark").get<std::string>();
    camo.selection.fraction = sel.at("fraction").get<double>();
    camo.selection.seed = sel.at("seed").get<std::uint64_t>();
    for (const auto& g : sel.at("gates"))
        camo.selection.gates.push_back(gate_by_name(nl, g.get<std::string>()));

    for (const auto& t : j.at("transform_log")) {
        TransformEntry e;
        e.gate = gate_by_name(nl, t.at("gate").get<std::string>());
        e.original = *gate_kind_from_string(t.at("original").get<std::string>());
        e.rewritten = *gate_kind_from_string(t.at("rewritten").get<std::string>());
        e.const_input = t.at("const").get<int>() != 0;
        camo.transform_log.push_back(e);
    }
    for (const auto& t : j.at("disguised_ties"))
        camo.disguised_ties.push_back(
            DisguisedTie{gate_by_name(nl, t.at("gate").get<std::string>()),
                         t.at("value").get<int>() != 0});
    for (const auto& l : j.at("lists")) {
        CandidateList list;
        list.gate = gate_by_name(nl, l.at("gate").get<std::string>());
        list.pin = l.at("pin").get<int>();
        list.secret_index = l.at("secret").get<int>();
        for (const auto& c : l.at("candidates")) {
            auto net = nl.find_net(c.at("net").get<std::string>());
            if (!net)
                throw Error("sidecar candidate net not found");
            list.candidates.push_back(Candidate{*net, tag_from_name(c.at("tag"))});
        }
        camo.lists.push_back(std::move(list));
        camo.camouflaged_gates.push_back(camo.lists.back().gate);
    }
    std::sort(camo.camouflaged_gates.begin(), camo.camouflaged_gates.end());
    camo.camouflaged_gates.erase(
        std::unique(camo.camouflaged_gates.begin(), camo.camouflaged_gates.end()),
        camo.camouflaged_gates.end());
    return camo;
}

std::string selection_to_json(const SelectionSet& sel, const Netlist& netlist) {
    json j;
    j["benchmark"] = sel.benchmark;
    j["fraction"] = sel.fraction;
    j["seed"] = sel.seed;
    json gates = json::array();
    for (GateId g : sel.gates)
        gates.push_back(gate_name(netlist, g));
    j["gates"] = gates;
    return j.dump(2) + "\n";
}

SelectionSet selection_from_json(const std::string& text, const Netlist& netlist) {
    json j = json::parse(text);
    SelectionSet sel;
    sel.benchmark = j.at("benchmark").get<std::string>();
    sel.fraction = j.at("fraction").get<double>();
    sel.seed = j.at("seed").get<std::uint64_t>();
    for (const auto& g : j.at("gates"))
        sel.gates.push_back(gate_by_name(netlist, g.get<std::string>()));
    std::sort(sel.gates.begin(), sel.gates.end());
    return sel;
}

}  // namespace camo

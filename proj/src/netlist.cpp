#include "camo/netlist.hpp"

#include <algorithm>
#include <cctype>

namespace camo {

const char* to_string(GateKind kind) {
    switch (kind) {
    case GateKind::And: return "AND";
    case GateKind::Nand: return "NAND";
    case GateKind::Or: return "OR";
    case GateKind::Nor: return "NOR";
    case GateKind::Xor: return "XOR";
    case GateKind::Xnor: return "XNOR";
    case GateKind::Inv: return "NOT";
    case GateKind::Buf: return "BUF";
    case GateKind::Tie0: return "TIE0";
    case GateKind::Tie1: return "TIE1";
    }
    return "?";
}

std::optional<GateKind> gate_kind_from_string(std::string_view text) {
    std::string up(text);
    std::transform(up.begin(), up.end(), up.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    if (up == "AND") return GateKind::And;
    if (up == "NAND") return GateKind::Nand;
    if (up == "OR") return GateKind::Or;
    if (up == "NOR") return GateKind::Nor;
    if (up == "XOR") return GateKind::Xor;
    if (up == "XNOR") return GateKind::Xnor;
    if (up == "NOT" || up == "INV") return GateKind::Inv;
    if (up == "BUF" || up == "BUFF") return GateKind::Buf;
    if (up == "TIE0") return GateKind::Tie0;
    if (up == "TIE1") return GateKind::Tie1;
    return std::nullopt;
}

int min_arity(GateKind kind) {
    switch (kind) {
    case GateKind::Inv:
    case GateKind::Buf: return 1;
    case GateKind::Tie0:
    case GateKind::Tie1: return 0;
    default: return 2;
    }
}

int max_arity(GateKind kind) {
    switch (kind) {
    case GateKind::Inv:
    case GateKind::Buf: return 1;
    case GateKind::Tie0:
    case GateKind::Tie1: return 0;
    case GateKind::Xor:
    case GateKind::Xnor: return 2;
    default: return 1 << 20;
    }
}

NetId Netlist::add_primary_input(const std::string& net_name) {
    NetId id = add_net(net_name);
    primary_inputs_.push_back(id);
    return id;
}

NetId Netlist::add_net(const std::string& net_name) {
    if (net_by_name_.count(net_name))
        throw Error("duplicate net name '" + net_name + "'");
    NetId id = static_cast<NetId>(nets_.size());
    nets_.push_back(Net{net_name, no_driver, {}});
    net_by_name_.emplace(net_name, id);
    return id;
}

NetId Netlist::make_net(const std::string& hint) {
    if (!net_by_name_.count(hint))
        return add_net(hint);
    for (int i = 1;; ++i) {
        std::string candidate = hint + "_" + std::to_string(i);
        if (!net_by_name_.count(candidate))
            return add_net(candidate);
    }
}

GateId Netlist::add_gate(GateKind kind, std::span<const NetId> inputs, NetId output) {
    int n = static_cast<int>(inputs.size());
    if (n < min_arity(kind) || n > max_arity(kind))
        throw Error(std::string(to_string(kind)) + " gate with " + std::to_string(n) +
                    " inputs");
    Net& out = nets_[static_cast<std::size_t>(output)];
    if (out.driver != no_driver)
        throw Error("net '" + out.name + "' is multiply driven");
    if (std::find(primary_inputs_.begin(), primary_inputs_.end(), output) !=
        primary_inputs_.end())
        throw Error("net '" + out.name + "' is both a primary input and a gate output");
    GateId id = static_cast<GateId>(gates_.size());
    gates_.push_back(Gate{kind, std::vector<NetId>(inputs.begin(), inputs.end()), output});
    out.driver = id;
    for (int pin = 0; pin < n; ++pin)
        nets_[static_cast<std::size_t>(inputs[pin])].sinks.emplace_back(id, pin);
    return id;
}

void Netlist::mark_primary_output(NetId net_id) {
    primary_outputs_.push_back(net_id);
}

void Netlist::rewire_gate_input(GateId gate_id, int pin, NetId new_net) {
    Gate& g = gates_[static_cast<std::size_t>(gate_id)];
    NetId old = g.inputs[static_cast<std::size_t>(pin)];
    if (old == new_net)
        return;
    auto& sinks = nets_[static_cast<std::size_t>(old)].sinks;
    sinks.erase(std::remove(sinks.begin(), sinks.end(), std::make_pair(gate_id, pin)),
                sinks.end());
    g.inputs[static_cast<std::size_t>(pin)] = new_net;
    nets_[static_cast<std::size_t>(new_net)].sinks.emplace_back(gate_id, pin);
}

void Netlist::set_gate_kind(GateId gate_id, GateKind kind) {
    gates_[static_cast<std::size_t>(gate_id)].kind = kind;
}

void Netlist::append_gate_input(GateId gate_id, NetId net_id) {
    Gate& g = gates_[static_cast<std::size_t>(gate_id)];
    int pin = static_cast<int>(g.inputs.size());
    g.inputs.push_back(net_id);
    nets_[static_cast<std::size_t>(net_id)].sinks.emplace_back(gate_id, pin);
}

void Netlist::move_gate_output(GateId gate_id, NetId new_net) {
    Gate& g = gates_[static_cast<std::size_t>(gate_id)];
    Net& fresh = nets_[static_cast<std::size_t>(new_net)];
    if (fresh.driver != no_driver)
        throw Error("net '" + fresh.name + "' is already driven");
    nets_[static_cast<std::size_t>(g.output)].driver = no_driver;
    g.output = new_net;
    fresh.driver = gate_id;
}

std::optional<NetId> Netlist::find_net(std::string_view net_name) const {
    auto it = net_by_name_.find(std::string(net_name));
    if (it == net_by_name_.end())
        return std::nullopt;
    return it->second;
}

NetlistStats Netlist::stats() const {
    NetlistStats s;
    s.num_inputs = static_cast<int>(primary_inputs_.size());
    s.num_outputs = static_cast<int>(primary_outputs_.size());
    s.num_gates = static_cast<int>(gates_.size());
    for (const Gate& g : gates_) {
        s.per_kind[static_cast<std::size_t>(g.kind)]++;
        if (g.kind == GateKind::Inv || g.kind == GateKind::Buf)
            s.num_inv_buf++;
    }
    return s;
}

void Netlist::validate() const {
    for (std::size_t i = 0; i < nets_.size(); ++i) {
        const Net& n = nets_[i];
        NetId id = static_cast<NetId>(i);
        bool is_pi = std::find(primary_inputs_.begin(), primary_inputs_.end(), id) !=
                     primary_inputs_.end();
        if (n.driver == no_driver && !is_pi)
            throw Error("net '" + n.name + "' has no driver and is not a primary input");
        if (n.driver != no_driver && is_pi)
            throw Error("net '" + n.name + "' is both driven and a primary input");
    }
    for (const Gate& g : gates_) {
        int n = static_cast<int>(g.inputs.size());
        if (n < min_arity(g.kind) || n > max_arity(g.kind))
            throw Error(std::string("gate driving '") + net(g.output).name +
                        "' has invalid arity");
    }
    for (NetId po : primary_outputs_) {
        if (po < 0 || po >= num_nets())
            throw Error("primary output refers to unknown net");
    }
    TopoResult topo = topo_order(*this);
    if (!topo.acyclic()) {
        std::string msg = "netlist contains a combinational cycle:";
        for (GateId g : topo.cycle)
            msg += " " + net(gate(g).output).name;
        throw Error(msg);
    }
}

TopoResult topo_order(const Netlist& netlist) {
    int n = netlist.num_gates();
    std::vector<int> indegree(static_cast<std::size_t>(n), 0);
    for (GateId g = 0; g < n; ++g) {
        for (NetId in : netlist.gate(g).inputs) {
            if (netlist.net(in).driver != no_driver)
                indegree[static_cast<std::size_t>(g)]++;
        }
    }
    TopoResult result;
    result.order.reserve(static_cast<std::size_t>(n));
    std::vector<GateId> ready;
    for (GateId g = 0; g < n; ++g)
        if (indegree[static_cast<std::size_t>(g)] == 0)
            ready.push_back(g);
    std::size_t head = 0;
    std::vector<GateId>& order = result.order;
    while (head < ready.size()) {
        GateId g = ready[head++];
        order.push_back(g);
        const Net& out = netlist.net(netlist.gate(g).output);
        for (auto [sink, pin] : out.sinks) {
            (void)pin;
            if (--indegree[static_cast<std::size_t>(sink)] == 0)
                ready.push_back(sink);
        }
    }
    if (static_cast<int>(order.size()) == n)
        return result;

    // Some gates remain with positive in-degree; walk predecessors among
    // them until a gate repeats, then emit that loop as the witness.
    std::vector<char> stuck(static_cast<std::size_t>(n), 0);
    for (GateId g = 0; g < n; ++g)
        if (indegree[static_cast<std::size_t>(g)] > 0)
            stuck[static_cast<std::size_t>(g)] = 1;
    GateId start = 0;
    while (!stuck[static_cast<std::size_t>(start)])
        ++start;
    std::vector<GateId> path;
    std::vector<int> visited_at(static_cast<std::size_t>(n), -1);
    GateId cur = start;
    while (visited_at[static_cast<std::size_t>(cur)] < 0) {
        visited_at[static_cast<std::size_t>(cur)] = static_cast<int>(path.size());
        path.push_back(cur);
        GateId pred = -1;
        for (NetId in : netlist.gate(cur).inputs) {
            GateId d = netlist.net(in).driver;
            if (d != no_driver && stuck[static_cast<std::size_t>(d)]) {
                pred = d;
                break;
            }
        }
        cur = pred;
    }
    int loop_start = visited_at[static_cast<std::size_t>(cur)];
    result.cycle.assign(path.begin() + loop_start, path.end());
    std::reverse(result.cycle.begin(), result.cycle.end());  // edge order
    return result;
}

std::vector<NetId> neighborhood_nets(const Netlist& netlist, GateId gate_id, int radius) {
    if (gate_id < 0 || gate_id >= netlist.num_gates())
        throw Error("neighborhood_nets: unknown gate id " + std::to_string(gate_id));
    if (radius < 1)
        throw Error("neighborhood_nets: radius must be >= 1");

    const Gate& root = netlist.gate(gate_id);
    std::vector<char> own(static_cast<std::size_t>(netlist.num_nets()), 0);
    own[static_cast<std::size_t>(root.output)] = 1;
    for (NetId in : root.inputs)
        own[static_cast<std::size_t>(in)] = 1;

    std::vector<char> gate_seen(static_cast<std::size_t>(netlist.num_gates()), 0);
    std::vector<char> net_seen(static_cast<std::size_t>(netlist.num_nets()), 0);
    std::vector<GateId> frontier{gate_id};
    gate_seen[static_cast<std::size_t>(gate_id)] = 1;
    std::vector<NetId> result;

    auto touch_net = [&](NetId n, std::vector<GateId>& next) {
        if (!net_seen[static_cast<std::size_t>(n)]) {
            net_seen[static_cast<std::size_t>(n)] = 1;
            if (!own[static_cast<std::size_t>(n)])
                result.push_back(n);
        }
        GateId d = netlist.net(n).driver;
        if (d != no_driver && !gate_seen[static_cast<std::size_t>(d)]) {
            gate_seen[static_cast<std::size_t>(d)] = 1;
            next.push_back(d);
        }
        for (auto [sink, pin] : netlist.net(n).sinks) {
            (void)pin;
            if (!gate_seen[static_cast<std::size_t>(sink)]) {
                gate_seen[static_cast<std::size_t>(sink)] = 1;
                next.push_back(sink);
            }
        }
    };

    for (int hop = 0; hop < radius && !frontier.empty(); ++hop) {
        std::vector<GateId> next;
        for (GateId g : frontier) {
            const Gate& gg = netlist.gate(g);
            touch_net(gg.output, next);
            for (NetId in : gg.inputs)
                touch_net(in, next);
        }
        frontier = std::move(next);
    }
    return result;
}

bool eval_gate_const(GateKind kind, std::span<const bool> inputs) {
    switch (kind) {
    case GateKind::And:
    case GateKind::Nand: {
        bool v = true;
        for (bool b : inputs)
            v = v && b;
        return kind == GateKind::And ? v : !v;
    }
    case GateKind::Or:
    case GateKind::Nor: {
        bool v = false;
        for (bool b : inputs)
            v = v || b;
        return kind == GateKind::Or ? v : !v;
    }
    case GateKind::Xor: return inputs[0] != inputs[1];
    case GateKind::Xnor: return inputs[0] == inputs[1];
    case GateKind::Inv: return !inputs[0];
    case GateKind::Buf: return inputs[0];
    case GateKind::Tie0: return false;
    case GateKind::Tie1: return true;
    }
    return false;
}

}  // namespace camo

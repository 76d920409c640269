#include "camo/sim.hpp"

namespace camo {

std::string BitVector::to_bit_string() const {
    std::string s;
    s.reserve(static_cast<std::size_t>(width_));
    for (int i = 0; i < width_; ++i)
        s.push_back(get(i) ? '1' : '0');
    return s;
}

std::string BitVector::to_hex() const {
    static const char* digits = "0123456789abcdef";
    std::string s;
    for (int i = 0; i < width_; i += 4) {
        int v = 0;
        for (int j = 0; j < 4 && i + j < width_; ++j)
            v |= get(i + j) << j;
        s.push_back(digits[v]);
    }
    return s;
}

BitVector BitVector::from_bit_string(std::string_view bits) {
    BitVector v(static_cast<int>(bits.size()));
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] == '1')
            v.set(static_cast<int>(i), true);
        else if (bits[i] != '0')
            throw Error("bit string must contain only 0/1");
    }
    return v;
}

Simulator::Simulator(const Netlist& netlist) : netlist_(&netlist) {
    TopoResult topo = topo_order(netlist);
    if (!topo.acyclic())
        throw Error("cannot simulate a cyclic netlist");
    order_ = std::move(topo.order);
}

std::vector<std::uint64_t> Simulator::run_words(
    std::span<const std::uint64_t> pi_words) const {
    const Netlist& nl = *netlist_;
    if (pi_words.size() != nl.primary_inputs().size())
        throw Error("stimulus width " + std::to_string(pi_words.size()) +
                    " does not match PI count " +
                    std::to_string(nl.primary_inputs().size()));
    std::vector<std::uint64_t> value(static_cast<std::size_t>(nl.num_nets()), 0);
    for (std::size_t i = 0; i < pi_words.size(); ++i)
        value[static_cast<std::size_t>(nl.primary_inputs()[i])] = pi_words[i];
    for (GateId g : order_) {
        const Gate& gate = nl.gate(g);
        std::uint64_t v = 0;
        switch (gate.kind) {
        case GateKind::And:
        case GateKind::Nand:
            v = ~std::uint64_t{0};
            for (NetId in : gate.inputs)
                v &= value[static_cast<std::size_t>(in)];
            if (gate.kind == GateKind::Nand)
                v = ~v;
            break;
        case GateKind::Or:
        case GateKind::Nor:
            v = 0;
            for (NetId in : gate.inputs)
                v |= value[static_cast<std::size_t>(in)];
            if (gate.kind == GateKind::Nor)
                v = ~v;
            break;
        case GateKind::Xor:
            v = value[static_cast<std::size_t>(gate.inputs[0])] ^
                value[static_cast<std::size_t>(gate.inputs[1])];
            break;
        case GateKind::Xnor:
            v = ~(value[static_cast<std::size_t>(gate.inputs[0])] ^
                  value[static_cast<std::size_t>(gate.inputs[1])]);
            break;
        case GateKind::Inv:
            v = ~value[static_cast<std::size_t>(gate.inputs[0])];
            break;
        case GateKind::Buf:
            v = value[static_cast<std::size_t>(gate.inputs[0])];
            break;
        case GateKind::Tie0:
            v = 0;
            break;
        case GateKind::Tie1:
            v = ~std::uint64_t{0};
            break;
        }
        value[static_cast<std::size_t>(gate.output)] = v;
    }
    std::vector<std::uint64_t> out;
    out.reserve(nl.primary_outputs().size());
    for (NetId po : nl.primary_outputs())
        out.push_back(value[static_cast<std::size_t>(po)]);
    return out;
}

BitVector Simulator::run(const BitVector& stimulus) const {
    const Netlist& nl = *netlist_;
    int npi = static_cast<int>(nl.primary_inputs().size());
    if (stimulus.width() != npi)
        throw Error("stimulus width " + std::to_string(stimulus.width()) +
                    " does not match PI count " + std::to_string(npi));
    std::vector<std::uint64_t> words(static_cast<std::size_t>(npi));
    for (int i = 0; i < npi; ++i)
        words[static_cast<std::size_t>(i)] = stimulus.get(i) ? 1 : 0;
    std::vector<std::uint64_t> po = run_words(words);
    BitVector out(static_cast<int>(po.size()));
    for (std::size_t i = 0; i < po.size(); ++i)
        out.set(static_cast<int>(i), po[i] & 1);
    return out;
}

BitVector simulate(const Netlist& netlist, const BitVector& stimulus) {
    return Simulator(netlist).run(stimulus);
}

}  // namespace camo

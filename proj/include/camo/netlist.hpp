#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace camo {

// Toolkit-wide error type; parse errors carry line information in the message.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

enum class GateKind : std::uint8_t {
    And,
    Nand,
    Or,
    Nor,
    Xor,
    Xnor,
    Inv,
    Buf,
    Tie0,
    Tie1,
};

inline constexpr int num_gate_kinds = 10;

const char* to_string(GateKind kind);
std::optional<GateKind> gate_kind_from_string(std::string_view text);

// Inclusive arity bounds. XOR/XNOR are restricted to 2 inputs; wider ones
// must be decomposed before ingestion.
int min_arity(GateKind kind);
int max_arity(GateKind kind);

using NetId = std::int32_t;
using GateId = std::int32_t;

inline constexpr NetId null_net = -1;
inline constexpr GateId no_driver = -1;  // net is a primary input

struct Net {
    std::string name;
    GateId driver = no_driver;
    std::vector<std::pair<GateId, int>> sinks;  // (gate, pin)
};

struct Gate {
    GateKind kind;
    std::vector<NetId> inputs;
    NetId output = null_net;
};

struct NetlistStats {
    int num_inputs = 0;
    int num_outputs = 0;
    int num_gates = 0;
    int num_inv_buf = 0;
    std::array<int, num_gate_kinds> per_kind{};
};

// Gate-level combinational netlist. Ids are dense and assigned in insertion
// order, so construction from the same source is fully reproducible. After
// construction the object is treated as immutable and may be shared
// read-only across threads; the mutating calls below are for the single
// owner building or transforming it.
class Netlist {
public:
    explicit Netlist(std::string name = "top") : name_(std::move(name)) {}

    const std::string& name() const { return name_; }
    void set_name(std::string n) { name_ = std::move(n); }

    NetId add_primary_input(const std::string& net_name);
    // Creates a named net with no driver yet (the parser resolves drivers in
    // a second pass; a driverless, non-PI net fails validate()).
    NetId add_net(const std::string& net_name);
    // Fresh net whose name starts with `hint`, made unique if taken.
    NetId make_net(const std::string& hint);

    GateId add_gate(GateKind kind, std::span<const NetId> inputs, NetId output);
    GateId add_gate(GateKind kind, std::initializer_list<NetId> inputs, NetId output) {
        return add_gate(kind, std::span<const NetId>(inputs.begin(), inputs.size()), output);
    }
    void mark_primary_output(NetId net);

    // Transform support; keeps sink lists consistent.
    void rewire_gate_input(GateId gate, int pin, NetId new_net);
    void set_gate_kind(GateId gate, GateKind kind);
    void append_gate_input(GateId gate, NetId net);
    // Re-points the gate at an undriven net; the old output net is left
    // driverless until a new gate claims it.
    void move_gate_output(GateId gate, NetId new_net);

    std::optional<NetId> find_net(std::string_view net_name) const;

    const Gate& gate(GateId id) const { return gates_[static_cast<std::size_t>(id)]; }
    const Net& net(NetId id) const { return nets_[static_cast<std::size_t>(id)]; }
    int num_gates() const { return static_cast<int>(gates_.size()); }
    int num_nets() const { return static_cast<int>(nets_.size()); }
    const std::vector<NetId>& primary_inputs() const { return primary_inputs_; }
    const std::vector<NetId>& primary_outputs() const { return primary_outputs_; }

    bool is_primary_input(NetId id) const { return net(id).driver == no_driver; }

    NetlistStats stats() const;

    // Throws Error on any structural violation (undriven net, arity
    // mismatch, duplicate name, cycle).
    void validate() const;

private:
    std::string name_;
    std::vector<Gate> gates_;
    std::vector<Net> nets_;
    std::vector<NetId> primary_inputs_;
    std::vector<NetId> primary_outputs_;
    std::unordered_map<std::string, NetId> net_by_name_;
};

struct TopoResult {
    std::vector<GateId> order;  // valid iff cycle is empty
    std::vector<GateId> cycle;  // witness cycle, in edge order
    bool acyclic() const { return cycle.empty(); }
};

TopoResult topo_order(const Netlist& netlist);

// All nets within `radius` hops of `gate`, where one hop walks from a gate
// to the gates sharing any of its nets. The gate's own input and output
// nets are excluded. Serves as the logical-proximity stand-in for the
// physical neighborhood search.
std::vector<NetId> neighborhood_nets(const Netlist& netlist, GateId gate, int radius);

// True Boolean value of a gate kind on constant inputs.
bool eval_gate_const(GateKind kind, std::span<const bool> inputs);

}  // namespace camo

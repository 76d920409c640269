#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "camo/camouflage.hpp"
#include "camo/netlist.hpp"

namespace camo {

// Defender's secret: one bit per key input, bit i drives keyinput<i>.
struct Key {
    std::vector<std::uint8_t> bits;

    int width() const { return static_cast<int>(bits.size()); }
    std::string to_bit_string() const;
    static Key from_bit_string(std::string_view text);

    // Value of the slice [offset, offset+width), LSB first.
    std::uint64_t slice(int offset, int width) const;
    void set_slice(int offset, int width, std::uint64_t value);
};

// One key-controlled choice in the locked circuit. pin >= 0 selects the
// source of that input pin among candidate nets; pin == -1 is an
// output-side element (gate-function or output-mux choice).
struct LockElement {
    GateId gate = -1;
    int pin = 0;
    int offset = 0;  // first key bit
    int width = 0;   // ceil(log2(count)); codes >= count alias to code % count
    int count = 0;
    std::vector<NetId> candidates;  // pin selectors only
};

// Attacker's view: a plain netlist whose extra primary inputs
// keyinput0..keyinputN-1 control selector gadgets built from ordinary
// AND/OR/NOT gates.
struct LockedCircuit {
    Netlist netlist;
    std::vector<NetId> key_nets;       // ascending keyinput order
    std::vector<LockElement> elements; // empty when loaded from BENCH

    int key_width() const { return static_cast<int>(key_nets.size()); }
    std::vector<NetId> circuit_inputs() const;  // PIs minus key inputs
};

struct LockResult {
    LockedCircuit locked;
    Key key;
};

// Realizes each candidate list as a binary-encoded selector tree of 2-input
// MUX logic (decomposed into AND/OR/NOT gates).
LockResult lock(const CamouflagedNetlist& camo);

// Key-controlled encodings of the prior-art primitives:
//  - AmbiguousFunctionSet: selected gates of a kind in the set become a
//    key-selected choice among all kinds in the set over the true inputs.
//  - MuxPair: each selected gate's output (or one input pin, with
//    placement "in") is muxed against a unique dummy net under 1 key bit.
//  - DummyVia: N sink pins each get a {true driver, dummy net} selector.
LockResult lock_prior_art(const Netlist& netlist, const SelectionSet& selection,
                          const Scheme& scheme, std::uint64_t seed,
                          const CamoOptions& options = {});

// Constant-propagates the key bits and collapses selector gadgets back to a
// plain netlist. Gates untouched by key constants are preserved verbatim.
Netlist resolve(const LockedCircuit& locked, const Key& key);

std::string write_locked_bench(const LockedCircuit& locked);
LockedCircuit parse_locked_bench(std::string_view text, std::string name = "locked");
LockedCircuit parse_locked_bench_file(const std::string& path);

std::string key_to_text(const Key& key, const LockedCircuit& locked);
Key key_from_text(std::string_view text);

}  // namespace camo

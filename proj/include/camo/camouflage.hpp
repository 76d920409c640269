#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "camo/netlist.hpp"
#include "camo/rng.hpp"

namespace camo {

// Camouflaging/locking primitive. TwoToOne and ThreeToOne route one or two
// dummy wires next to the real one; ExtendedFixed adds constant-0/1 wires
// next to m regular wires per input. The remaining tags describe prior-art
// primitives consumed directly by the lock encoder.
struct Scheme {
    enum class Flavor {
        TwoToOne,
        ThreeToOne,
        ExtendedFixed,
        AmbiguousFunctionSet,
        MuxPair,
        DummyVia,
    };
    enum class MuxPlacement { OutputSide, InputSide };

    Flavor flavor = Flavor::ExtendedFixed;
    int regular_wires = 2;          // m, ExtendedFixed only
    std::vector<GateKind> kinds;    // AmbiguousFunctionSet
    int dummy_wires = 0;            // DummyVia wire count
    MuxPlacement placement = MuxPlacement::OutputSide;

    static Scheme two_to_one();
    static Scheme three_to_one();
    static Scheme extended_fixed(int m);
    static Scheme ambiguous(std::vector<GateKind> kinds);
    static Scheme mux_pair(MuxPlacement placement = MuxPlacement::OutputSide);
    static Scheme dummy_via(int wires);

    bool is_candidate_flavor() const {
        return flavor == Flavor::TwoToOne || flavor == Flavor::ThreeToOne ||
               flavor == Flavor::ExtendedFixed;
    }

    std::string to_string() const;
    // Accepts: 2to1, 3to1, extended:<m>, xnn (XOR/NAND/NOR set),
    // muxpair[:in|:out], dummyvia:<n>.
    static Scheme parse(std::string_view text);
};

enum class SourceTag : std::uint8_t { Regular, Const0, Const1 };

struct Candidate {
    NetId net = null_net;
    SourceTag tag = SourceTag::Regular;
    bool operator==(const Candidate&) const = default;
};

struct CandidateList {
    GateId gate = -1;
    int pin = 0;
    std::vector<Candidate> candidates;  // order is the physical wire order
    int secret_index = 0;               // position of the true source
};

struct SelectionSet {
    std::string benchmark;
    double fraction = 0.0;
    std::uint64_t seed = 0;
    std::vector<GateId> gates;  // ascending
};

struct TransformEntry {
    GateId gate = -1;
    GateKind original = GateKind::Inv;
    GateKind rewritten = GateKind::Nand;
    bool const_input = true;  // value of the constant wired to the new pin
};

struct DisguisedTie {
    GateId gate = -1;
    bool value = false;  // fixed output value
};

struct CamoOptions {
    int radius = 5;                       // neighborhood hops for dummy nets
    double tie_prob = 0.2;                // constant wire -> disguised tie
    double disguised_tie_fraction = 0.05; // of selected gates
    int min_disguised_ties = 2;
    double inv_buf_fraction = 0.5;

    bool operator==(const CamoOptions&) const = default;
};

struct CamouflagedNetlist {
    Netlist base;  // post-transformation; resolving every list at its
                   // secret index reproduces this connectivity
    Scheme scheme;
    std::uint64_t seed = 0;
    CamoOptions options;
    SelectionSet selection;
    std::vector<CandidateList> lists;  // ordered by (gate, pin)
    std::vector<GateId> camouflaged_gates;
    std::vector<TransformEntry> transform_log;
    std::vector<DisguisedTie> disguised_ties;

    // Netlist with every camouflaged pin rewired to the chosen candidate;
    // choice[i] indexes lists[i]. Secret resolution passes empty choice.
    Netlist resolve_assignment(std::span<const int> choice = {}) const;
};

SelectionSet select_gates(const Netlist& netlist, double fraction, std::uint64_t seed);
std::string selection_to_json(const SelectionSet& sel, const Netlist& netlist);
SelectionSet selection_from_json(const std::string& text, const Netlist& netlist);

struct TransformResult {
    Netlist netlist;
    std::vector<TransformEntry> log;
};
TransformResult transform_inv_buf(const Netlist& netlist, double fraction,
                                  std::uint64_t seed);

struct TieResult {
    Netlist netlist;
    std::vector<DisguisedTie> ties;
};
TieResult insert_disguised_ties(const Netlist& netlist, int count, std::uint64_t seed);

// Builds candidate lists on an already-transformed netlist. `ties` names the
// disguised-tie gates present in `netlist`.
CamouflagedNetlist apply_camouflage(const Netlist& netlist, const SelectionSet& selection,
                                    const Scheme& scheme, std::uint64_t seed,
                                    const CamoOptions& options,
                                    std::vector<TransformEntry> transform_log = {},
                                    std::vector<DisguisedTie> ties = {});

// transform_inv_buf + insert_disguised_ties + apply_camouflage with seeds
// derived from `seed`.
CamouflagedNetlist camouflage_pipeline(const Netlist& original,
                                       const SelectionSet& selection,
                                       const Scheme& scheme, std::uint64_t seed,
                                       const CamoOptions& options = {});

// Sidecar serialization (JSON). Deterministic: identical inputs produce
// byte-identical text.
std::string camo_to_json(const CamouflagedNetlist& camo);
CamouflagedNetlist camo_from_json(const std::string& text, Netlist base);

// Count of distinct Boolean functions a single camouflaged 2-input gate can
// realize when all candidate nets are pairwise independent. Enumerates
// assignments instead of trusting a closed form.
int function_count(GateKind kind, const Scheme& scheme);

// The functions behind function_count, as truth tables over the candidate
// variables (bit i = function value on input pattern i), sorted.
std::vector<std::uint64_t> function_set(GateKind kind, const Scheme& scheme,
                                        int* num_vars_out = nullptr);

// True if rewiring each camouflaged pin to the chosen candidate yields an
// acyclic netlist; avoids materializing the resolved netlist.
bool assignment_acyclic(const CamouflagedNetlist& camo, std::span<const int> choice);

}  // namespace camo

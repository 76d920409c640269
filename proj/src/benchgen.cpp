#include "camo/benchgen.hpp"

#include <algorithm>
#include <cmath>

#include "camo/rng.hpp"

namespace camo {

const char* const c17_bench_text =
    "# c17\n"
    "INPUT(1)\n"
    "INPUT(2)\n"
    "INPUT(3)\n"
    "INPUT(6)\n"
    "INPUT(7)\n"
    "OUTPUT(22)\n"
    "OUTPUT(23)\n"
    "10 = NAND(1, 3)\n"
    "11 = NAND(3, 6)\n"
    "16 = NAND(2, 11)\n"
    "19 = NAND(11, 7)\n"
    "22 = NAND(10, 16)\n"
    "23 = NAND(16, 19)\n";

Netlist generate_benchmark(const BenchProfile& profile) {
    if (profile.num_inputs < 2 || profile.num_gates < 1 ||
        profile.num_outputs < 1 || profile.num_outputs > profile.num_gates)
        throw Error("benchmark profile out of range");
    Rng rng(profile.seed);
    Netlist nl(profile.name);

    std::vector<NetId> pis;
    for (int i = 0; i < profile.num_inputs; ++i)
        pis.push_back(nl.add_primary_input("I" + std::to_string(i)));

    // levelized: wide and shallow, like synthesized circuits
    int levels = static_cast<int>(std::sqrt(static_cast<double>(profile.num_gates)));
    levels = std::clamp(levels, 1, 64);
    levels = std::min(levels, profile.num_gates);

    struct Pick {
        GateKind kind;
        int weight;
    };
    const Pick picks[] = {
        {GateKind::And, 14},  {GateKind::Nand, 14}, {GateKind::Or, 14},
        {GateKind::Nor, 14},  {GateKind::Xor, 7},   {GateKind::Xnor, 7},
    };
    int two_in_weight = 0;
    for (const Pick& p : picks)
        two_in_weight += p.weight;

    std::vector<std::vector<NetId>> by_level(static_cast<std::size_t>(levels) + 1);
    by_level[0] = pis;
    std::vector<NetId> order;

    auto pick_from = [&](int level) -> NetId {
        // mostly the previous couple of levels, occasionally any input
        if (rng.coin(0.15))
            return pis[rng.below(pis.size())];
        int back = 1 + static_cast<int>(rng.below(3));
        int src = std::max(0, level - back);
        while (by_level[static_cast<std::size_t>(src)].empty())
            ++src;
        const auto& pool = by_level[static_cast<std::size_t>(src)];
        return pool[rng.below(pool.size())];
    };

    int made = 0;
    for (int l = 1; l <= levels; ++l) {
        int remaining_levels = levels - l + 1;
        int width = (profile.num_gates - made) / remaining_levels;
        if (l == levels)
            width = profile.num_gates - made;
        for (int i = 0; i < width; ++i) {
            NetId out = nl.add_net("G" + std::to_string(made));
            if (rng.coin(profile.repeater_share)) {
                GateKind k = rng.coin(0.6) ? GateKind::Inv : GateKind::Buf;
                nl.add_gate(k, {pick_from(l)}, out);
            } else {
                int roll =
                    static_cast<int>(rng.below(static_cast<std::uint64_t>(two_in_weight)));
                GateKind k = GateKind::And;
                for (const Pick& p : picks) {
                    if (roll < p.weight) {
                        k = p.kind;
                        break;
                    }
                    roll -= p.weight;
                }
                NetId a = pick_from(l);
                NetId b = pick_from(l);
                for (int tries = 0; b == a && tries < 8; ++tries)
                    b = pick_from(l);
                if (b == a)
                    b = pis[(static_cast<std::size_t>(a) + 1) % pis.size()];
                nl.add_gate(k, {a, b}, out);
            }
            by_level[static_cast<std::size_t>(l)].push_back(out);
            order.push_back(out);
            ++made;
        }
    }
    for (int i = 0; i < profile.num_outputs; ++i)
        nl.mark_primary_output(order[order.size() - 1 - static_cast<std::size_t>(i)]);
    nl.validate();
    return nl;
}

std::optional<BenchProfile> standard_profile(std::string_view name) {
    // published Inputs/Outputs/Gate Count characteristics
    if (name == "c7552")
        return BenchProfile{"c7552", 207, 108, 4045, 7552};
    if (name == "b14")
        return BenchProfile{"b14", 277, 299, 11028, 14};
    if (name == "b15")
        return BenchProfile{"b15", 485, 519, 10354, 15};
    if (name == "aes_core")
        return BenchProfile{"aes_core", 789, 668, 39014, 0xae5};
    if (name == "des")
        return BenchProfile{"des", 256, 245, 6473, 0xde5};
    // desk-scale circuits for sweeps and CI
    if (name == "desk_a")
        return BenchProfile{"desk_a", 8, 4, 60, 0xa};
    if (name == "desk_b")
        return BenchProfile{"desk_b", 10, 5, 120, 0xb};
    if (name == "desk_c")
        return BenchProfile{"desk_c", 12, 6, 200, 0xc};
    if (name == "desk_d")
        return BenchProfile{"desk_d", 14, 7, 300, 0xd};
    if (name == "desk_e")
        return BenchProfile{"desk_e", 16, 8, 500, 0xe};
    if (name == "desk_f")
        return BenchProfile{"desk_f", 20, 10, 800, 0xf};
    if (name == "desk_g")
        return BenchProfile{"desk_g", 24, 12, 1200, 0x10};
    if (name == "desk_h")
        return BenchProfile{"desk_h", 30, 15, 2000, 0x11};
    if (name == "desk_i")
        return BenchProfile{"desk_i", 36, 18, 2800, 0x12};
    return std::nullopt;
}

}  // namespace camo

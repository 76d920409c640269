#include <doctest.h>

#include <set>

#include "camo/attack.hpp"
#include "camo/bench.hpp"
#include "camo/lock.hpp"
#include "camo/sim.hpp"
#include "helpers.hpp"

using namespace camo;

namespace {

std::uint64_t output_table(const Netlist& nl) {
    int npi = static_cast<int>(nl.primary_inputs().size());
    REQUIRE(npi <= 6);
    Simulator sim(nl);
    std::uint64_t table = 0;
    for (std::uint64_t p = 0; p < (1ull << npi); ++p) {
        BitVector in(npi);
        for (int i = 0; i < npi; ++i)
            in.set(i, (p >> i) & 1);
        if (sim.run(in).get(0))
            table |= std::uint64_t{1} << p;
    }
    return table;
}

}  // namespace

TEST_CASE("four candidates need two key bits and the secret code routes the real wire") {
    Netlist nl = parse_bench(
        "INPUT(a)\nINPUT(w)\nINPUT(b)\nINPUT(x)\nOUTPUT(o)\no = XOR(a, b)\n");
    SelectionSet sel = select_gates(nl, 1.0, 1);
    CamoOptions opt;
    opt.tie_prob = 0.0;
    CamouflagedNetlist camo = apply_camouflage(nl, sel, Scheme::extended_fixed(2), 3, opt);
    LockResult lr = lock(camo);
    CHECK(lr.locked.key_width() == 4);  // two pins, 4 candidates each
    CHECK(lr.locked.elements.size() == 2);
    for (const LockElement& el : lr.locked.elements) {
        CHECK(el.width == 2);
        CHECK(el.count == 4);
    }
    Netlist resolved = resolve(lr.locked, lr.key);
    CHECK(equivalence_check(resolved, nl).equivalent);
}

TEST_CASE("three candidates alias code 3 to candidate 0") {
    Netlist nl = parse_bench(
        "INPUT(a)\nINPUT(w1)\nINPUT(w2)\nINPUT(b)\nINPUT(x1)\nINPUT(x2)\n"
        "OUTPUT(o)\no = AND(a, b)\n");
    SelectionSet sel = select_gates(nl, 1.0, 1);
    CamouflagedNetlist camo =
        apply_camouflage(nl, sel, Scheme::three_to_one(), 7, CamoOptions{});
    LockResult lr = lock(camo);
    REQUIRE(lr.locked.elements.size() == 2);
    CHECK(lr.locked.key_width() == 4);

    // per pin: codes congruent to the secret mod 3 select the real wire
    std::uint64_t original = output_table(nl);
    for (std::uint64_t code0 = 0; code0 < 4; ++code0) {
        for (std::uint64_t code1 = 0; code1 < 4; ++code1) {
            Key k;
            k.bits.assign(4, 0);
            k.set_slice(0, 2, code0);
            k.set_slice(2, 2, code1);
            Netlist resolved = resolve(lr.locked, k);
            bool correct = output_table(resolved) == original;
            std::uint64_t secret0 = lr.key.slice(0, 2);
            std::uint64_t secret1 = lr.key.slice(2, 2);
            bool expect = (code0 % 3 == secret0) && (code1 % 3 == secret1);
            // candidate wires are independent PIs here, so only the real
            // routing reproduces the function
            CHECK(correct == expect);
        }
    }
}

TEST_CASE("locked bench lists key inputs in ascending order with a header") {
    Netlist nl = testing::random_netlist(6, 30, 23);
    SelectionSet sel = select_gates(nl, 0.4, 23);
    CamouflagedNetlist camo =
        camouflage_pipeline(nl, sel, Scheme::two_to_one(), 23, CamoOptions{});
    LockResult lr = lock(camo);
    std::string text = write_locked_bench(lr.locked);
    CHECK(text.rfind("# camo-locked v1", 0) == 0);
    std::size_t last = 0;
    for (int i = 0; i < lr.locked.key_width(); ++i) {
        std::size_t pos = text.find("INPUT(keyinput" + std::to_string(i) + ")");
        REQUIRE(pos != std::string::npos);
        CHECK(pos > last);
        last = pos;
    }
    LockedCircuit back = parse_locked_bench(text);
    CHECK(back.key_width() == lr.locked.key_width());
    CHECK(equivalence_check(resolve(back, lr.key), resolve(lr.locked, lr.key)).equivalent);
}

TEST_CASE("resolve with an empty key is the identity") {
    Netlist nl = testing::random_netlist(5, 25, 3);
    LockedCircuit lc;
    lc.netlist = nl;
    Netlist resolved = resolve(lc, Key{});
    CHECK(write_bench(resolved) == write_bench(nl));
}

TEST_CASE("resolve rejects wrong key lengths") {
    Netlist nl = testing::random_netlist(5, 20, 4);
    SelectionSet sel = select_gates(nl, 0.5, 4);
    LockResult lr = lock(camouflage_pipeline(nl, sel, Scheme::two_to_one(), 4,
                                             CamoOptions{}));
    Key bad;
    bad.bits.assign(static_cast<std::size_t>(lr.locked.key_width() + 1), 0);
    CHECK_THROWS_AS(resolve(lr.locked, bad), Error);
}

TEST_CASE("a wrong key on a non-redundant pin yields a counterexample") {
    Netlist nl = parse_bench(
        "INPUT(a)\nINPUT(w)\nINPUT(b)\nINPUT(x)\nOUTPUT(o)\no = AND(a, b)\n");
    SelectionSet sel = select_gates(nl, 1.0, 1);
    CamouflagedNetlist camo =
        apply_camouflage(nl, sel, Scheme::two_to_one(), 2, CamoOptions{});
    LockResult lr = lock(camo);
    Key wrong = lr.key;
    wrong.bits[0] ^= 1;
    Netlist resolved = resolve(lr.locked, wrong);
    EquivalenceResult eq = equivalence_check(resolved, nl);
    CHECK(!eq.equivalent);
    // counterexample is simulator-confirmed inside equivalence_check; spot
    // check it here as well
    BitVector in = eq.counterexample;
    CHECK(!(simulate(resolved, in) == simulate(nl, in)));
}

TEST_CASE("locked circuits resolve acyclically for random and exhaustive keys") {
    Netlist nl = testing::random_netlist(8, 60, 12);
    SelectionSet sel = select_gates(nl, 0.3, 12);
    LockResult lr = lock(camouflage_pipeline(nl, sel, Scheme::extended_fixed(1), 12,
                                             CamoOptions{}));
    int width = lr.locked.key_width();
    Rng rng(9);
    if (width <= 16) {
        for (std::uint64_t v = 0; v < (1ull << width); ++v) {
            Key k;
            k.bits.assign(static_cast<std::size_t>(width), 0);
            k.set_slice(0, width, v);
            resolve(lr.locked, k).validate();
        }
    } else {
        for (int round = 0; round < 200; ++round) {
            Key k;
            k.bits.resize(static_cast<std::size_t>(width));
            for (auto& b : k.bits)
                b = static_cast<std::uint8_t>(rng.below(2));
            resolve(lr.locked, k).validate();
        }
    }
}

TEST_CASE("ambiguous function set distinguishes kinds on (0,1)") {
    // XOR/NAND/NOR on inputs (1,1) all give 0; on (0,1) they give 1/1/0
    bool v11[2] = {true, true};
    bool v01[2] = {false, true};
    CHECK(eval_gate_const(GateKind::Xor, v11) == false);
    CHECK(eval_gate_const(GateKind::Nand, v11) == false);
    CHECK(eval_gate_const(GateKind::Nor, v11) == false);
    CHECK(eval_gate_const(GateKind::Xor, v01) == true);
    CHECK(eval_gate_const(GateKind::Nand, v01) == true);
    CHECK(eval_gate_const(GateKind::Nor, v01) == false);
}

TEST_CASE("ambiguous lock keeps the original function under the correct key") {
    Netlist nl = parse_bench(
        "INPUT(a)\nINPUT(b)\nINPUT(c)\nOUTPUT(o)\n"
        "t = NAND(a, b)\no = XOR(t, c)\n");
    SelectionSet sel = select_gates(nl, 1.0, 1);
    Scheme scheme = Scheme::parse("xnn");
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
        LockResult lr = lock_prior_art(nl, sel, scheme, seed);
        CHECK(lr.locked.elements.size() == 2);      // both gates are in the set
        CHECK(lr.locked.key_width() == 4);          // 2 bits each for 3 kinds
        Netlist resolved = resolve(lr.locked, lr.key);
        CHECK(equivalence_check(resolved, nl).equivalent);
        // wrong kind on the NAND changes the function
        Key wrong = lr.key;
        std::uint64_t code = wrong.slice(lr.locked.elements[0].offset, 2);
        wrong.set_slice(lr.locked.elements[0].offset, 2, (code + 1) % 3);
        CHECK(!equivalence_check(resolve(lr.locked, wrong), nl).equivalent);
    }
}

TEST_CASE("mux pair on a tiny circuit has exactly one correct key class") {
    Netlist nl = parse_bench("INPUT(a)\nINPUT(b)\nOUTPUT(o)\no = AND(a, b)\n");
    SelectionSet sel = select_gates(nl, 1.0, 1);
    for (auto placement :
         {Scheme::MuxPlacement::OutputSide, Scheme::MuxPlacement::InputSide}) {
        LockResult lr = lock_prior_art(nl, sel, Scheme::mux_pair(placement), 3);
        REQUIRE(lr.locked.key_width() == 1);
        int correct = 0;
        for (std::uint64_t v = 0; v < 2; ++v) {
            Key k;
            k.bits = {static_cast<std::uint8_t>(v)};
            if (equivalence_check(resolve(lr.locked, k), nl).equivalent)
                ++correct;
        }
        CHECK(correct == 1);
        CHECK(equivalence_check(resolve(lr.locked, lr.key), nl).equivalent);
    }
}

TEST_CASE("dummy via locking uses one key bit per wire") {
    Netlist nl = testing::random_netlist(8, 60, 44);
    LockResult lr = lock_prior_art(nl, SelectionSet{}, Scheme::dummy_via(12), 44);
    CHECK(lr.locked.key_width() == 12);
    CHECK(equivalence_check(resolve(lr.locked, lr.key), nl).equivalent);
    // count exceeding the sink pins is rejected
    Netlist tiny = parse_bench("INPUT(a)\nINPUT(b)\nOUTPUT(o)\no = AND(a, b)\n");
    CHECK_THROWS_AS(lock_prior_art(tiny, SelectionSet{}, Scheme::dummy_via(3), 1),
                    Error);
}

TEST_CASE("key file round trip") {
    Netlist nl = testing::random_netlist(6, 30, 8);
    SelectionSet sel = select_gates(nl, 0.5, 8);
    LockResult lr = lock(camouflage_pipeline(nl, sel, Scheme::three_to_one(), 8,
                                             CamoOptions{}));
    std::string text = key_to_text(lr.key, lr.locked);
    CHECK(text.rfind("# camo-key v1", 0) == 0);
    Key back = key_from_text(text);
    CHECK(back.bits == lr.key.bits);
    CHECK_THROWS_AS(key_from_text("# camo-key v1\n"), Error);
}

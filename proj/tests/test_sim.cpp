#include <doctest.h>

#include "camo/bench.hpp"
#include "camo/sim.hpp"
#include "helpers.hpp"

using namespace camo;

TEST_CASE("basic gate semantics") {
    Netlist nl = parse_bench("INPUT(a)\nINPUT(b)\nOUTPUT(c)\nc = NAND(a, b)\n");
    BitVector in(2);
    in.set(0, true);
    in.set(1, true);
    CHECK(simulate(nl, in).get(0) == false);
    in.set(1, false);
    CHECK(simulate(nl, in).get(0) == true);
}

TEST_CASE("xor chain with constants is the identity") {
    Netlist nl = parse_bench(
        "INPUT(x)\nOUTPUT(z)\none = TIE1()\nt = XOR(x, one)\nz = XOR(t, one)\n");
    for (bool v : {false, true}) {
        BitVector in(1);
        in.set(0, v);
        CHECK(simulate(nl, in).get(0) == v);
    }
}

TEST_CASE("simulator agrees with the independent truth-table oracle") {
    for (std::uint64_t seed : {11u, 12u, 13u, 14u}) {
        Netlist nl = testing::random_netlist(5, 25, seed);
        std::string text = write_bench(nl);
        testing::TruthTableOracle oracle(text);
        Simulator sim(nl);
        int npi = static_cast<int>(nl.primary_inputs().size());
        for (std::uint64_t pattern = 0; pattern < (1ull << npi); ++pattern) {
            BitVector in(npi);
            for (int i = 0; i < npi; ++i)
                in.set(i, (pattern >> i) & 1);
            BitVector got = sim.run(in);
            std::vector<bool> want = oracle.eval(pattern);
            REQUIRE(want.size() == static_cast<std::size_t>(got.width()));
            for (std::size_t i = 0; i < want.size(); ++i)
                REQUIRE(got.get(static_cast<int>(i)) == want[i]);
        }
    }
}

TEST_CASE("word-parallel lanes match single runs") {
    Netlist nl = testing::random_netlist(7, 50, 77);
    Simulator sim(nl);
    int npi = static_cast<int>(nl.primary_inputs().size());
    Rng rng(5);
    std::vector<std::uint64_t> words(static_cast<std::size_t>(npi));
    for (auto& w : words)
        w = rng.next_u64();
    std::vector<std::uint64_t> po = sim.run_words(words);
    for (int lane = 0; lane < 64; lane += 9) {
        BitVector in(npi);
        for (int i = 0; i < npi; ++i)
            in.set(i, (words[static_cast<std::size_t>(i)] >> lane) & 1);
        BitVector single = sim.run(in);
        for (std::size_t o = 0; o < po.size(); ++o)
            CHECK(single.get(static_cast<int>(o)) == ((po[o] >> lane) & 1));
    }
}

TEST_CASE("width mismatch is an error") {
    Netlist nl = parse_bench("INPUT(a)\nINPUT(b)\nOUTPUT(c)\nc = AND(a, b)\n");
    CHECK_THROWS_AS(simulate(nl, BitVector(3)), Error);
}

TEST_CASE("bit vector hex") {
    BitVector v(8);
    v.set(0, true);
    v.set(4, true);
    v.set(5, true);
    CHECK(v.to_hex() == "13");
    CHECK(BitVector::from_bit_string("10001100").to_hex() == "13");
}

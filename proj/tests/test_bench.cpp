#include <doctest.h>

#include "camo/bench.hpp"
#include "helpers.hpp"

using namespace camo;

TEST_CASE("minimal well-formed file") {
    Netlist nl = parse_bench("INPUT(a)\nINPUT(b)\nOUTPUT(c)\nc = NAND(a, b)\n");
    CHECK(nl.primary_inputs().size() == 2);
    CHECK(nl.primary_outputs().size() == 1);
    CHECK(nl.num_gates() == 1);
    CHECK(nl.gate(0).kind == GateKind::Nand);
}

TEST_CASE("undeclared net reference is reported by name") {
    try {
        parse_bench("c = NAND(a, b)\n");
        FAIL("expected a parse error");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("'a'") != std::string::npos);
    }
}

TEST_CASE("parse errors") {
    CHECK_THROWS_AS(parse_bench("INPUT(a)\nINPUT(a)\n"), Error);          // duplicate PI
    CHECK_THROWS_AS(parse_bench("INPUT(a)\na = BUF(a)\n"), Error);        // redrives PI
    CHECK_THROWS_AS(parse_bench("INPUT(a)\nc = FOO(a)\n"), Error);        // bad keyword
    CHECK_THROWS_AS(parse_bench("INPUT(a)\nc = \n"), Error);              // syntax
    CHECK_THROWS_AS(parse_bench("INPUT(a)\nOUTPUT(z)\n"), Error);         // undeclared PO
    // wider XOR must be rejected, decompose upstream
    CHECK_THROWS_AS(parse_bench("INPUT(a)\nINPUT(b)\nINPUT(c)\nz = XOR(a, b, c)\n"),
                    Error);
    // combinational loop
    CHECK_THROWS_AS(parse_bench("INPUT(a)\nx = AND(a, y)\ny = AND(a, x)\nOUTPUT(x)\n"),
                    Error);
    // error message carries the line number
    try {
        parse_bench("INPUT(a)\n\nc = ??\n");
        FAIL("expected a parse error");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
}

TEST_CASE("forward references and constants parse") {
    Netlist nl = parse_bench("INPUT(a)\nOUTPUT(z)\nz = AND(a, t)\nt = CONST1\n");
    CHECK(nl.num_gates() == 2);
    Netlist nl2 = parse_bench("OUTPUT(z)\nz = TIE0()\n");
    CHECK(nl2.gate(0).kind == GateKind::Tie0);
}

TEST_CASE("writer emits the constant-source convention") {
    Netlist nl;
    NetId t = nl.add_net("t");
    nl.add_gate(GateKind::Tie1, {}, t);
    nl.mark_primary_output(t);
    std::string text = write_bench(nl);
    CHECK(text.find("t = TIE1()") != std::string::npos);
}

TEST_CASE("one-gate netlist writes exactly one NAND line") {
    Netlist nl = parse_bench("INPUT(a)\nINPUT(b)\nOUTPUT(c)\nc = NAND(a, b)\n");
    std::string text = write_bench(nl);
    std::size_t count = 0, pos = 0;
    while ((pos = text.find("= NAND(", pos)) != std::string::npos) {
        ++count;
        pos += 1;
    }
    CHECK(count == 1);
}

TEST_CASE("parse-write-parse is a fixpoint") {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        Netlist nl = testing::random_netlist(5, 40, seed);
        std::string once = write_bench(nl);
        Netlist back = parse_bench(once, nl.name());
        CHECK(testing::canonical_form(nl) == testing::canonical_form(back));
        CHECK(write_bench(back) == once);
        NetlistStats s1 = nl.stats();
        NetlistStats s2 = back.stats();
        CHECK(s1.num_gates == s2.num_gates);
        CHECK(s1.per_kind == s2.per_kind);
    }
}

TEST_CASE("names accept brackets and dots") {
    Netlist nl = parse_bench("INPUT(reg[3])\nOUTPUT(o.x)\no.x = BUF(reg[3])\n");
    CHECK(nl.find_net("reg[3]").has_value());
}

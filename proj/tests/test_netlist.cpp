#include <doctest.h>

#include "camo/netlist.hpp"
#include "helpers.hpp"

using namespace camo;

TEST_CASE("gate arity rules") {
    Netlist nl;
    NetId a = nl.add_primary_input("a");
    NetId b = nl.add_primary_input("b");
    NetId o = nl.add_net("o");
    CHECK_THROWS_AS(nl.add_gate(GateKind::Inv, {a, b}, o), Error);
    CHECK_THROWS_AS(nl.add_gate(GateKind::And, {a}, o), Error);
    CHECK_THROWS_AS(nl.add_gate(GateKind::Xor, {a, b, a}, o), Error);
    nl.add_gate(GateKind::Nand, {a, b}, o);
    NetId p = nl.add_net("p");
    CHECK_THROWS_AS(nl.add_gate(GateKind::Tie0, {a}, p), Error);
    nl.add_gate(GateKind::Tie0, {}, p);
}

TEST_CASE("multiply driven nets are rejected") {
    Netlist nl;
    NetId a = nl.add_primary_input("a");
    NetId o = nl.add_net("o");
    nl.add_gate(GateKind::Buf, {a}, o);
    CHECK_THROWS_AS(nl.add_gate(GateKind::Inv, {a}, o), Error);
    CHECK_THROWS_AS(nl.add_gate(GateKind::Inv, {o}, a), Error);  // drives a PI
    CHECK_THROWS_AS(nl.add_net("a"), Error);                     // duplicate name
}

TEST_CASE("topo order on a chain") {
    Netlist nl;
    NetId a = nl.add_primary_input("a");
    NetId n1 = nl.add_net("n1");
    NetId n2 = nl.add_net("n2");
    GateId g1 = nl.add_gate(GateKind::Buf, {a}, n1);
    GateId g2 = nl.add_gate(GateKind::Inv, {n1}, n2);
    nl.mark_primary_output(n2);
    TopoResult topo = topo_order(nl);
    REQUIRE(topo.acyclic());
    CHECK(topo.order == std::vector<GateId>{g1, g2});
}

TEST_CASE("topo order accepts any order for independent gates") {
    Netlist nl;
    NetId a = nl.add_primary_input("a");
    NetId b = nl.add_primary_input("b");
    NetId n1 = nl.add_net("n1");
    NetId n2 = nl.add_net("n2");
    nl.add_gate(GateKind::Inv, {a}, n1);
    nl.add_gate(GateKind::Inv, {b}, n2);
    TopoResult topo = topo_order(nl);
    REQUIRE(topo.acyclic());
    CHECK(topo.order.size() == 2);
}

TEST_CASE("cycle witness names the loop") {
    Netlist nl;
    NetId a = nl.add_primary_input("a");
    NetId n1 = nl.add_net("n1");
    NetId n2 = nl.add_net("n2");
    GateId g1 = nl.add_gate(GateKind::And, {a, n2}, n1);
    GateId g2 = nl.add_gate(GateKind::And, {a, n1}, n2);
    TopoResult topo = topo_order(nl);
    REQUIRE(!topo.acyclic());
    CHECK(topo.cycle.size() == 2);
    CHECK(std::count(topo.cycle.begin(), topo.cycle.end(), g1) == 1);
    CHECK(std::count(topo.cycle.begin(), topo.cycle.end(), g2) == 1);
    CHECK_THROWS_AS(nl.validate(), Error);
}

TEST_CASE("stats on an empty netlist") {
    Netlist nl;
    NetlistStats s = nl.stats();
    CHECK(s.num_inputs == 0);
    CHECK(s.num_outputs == 0);
    CHECK(s.num_gates == 0);
    CHECK(s.num_inv_buf == 0);
}

TEST_CASE("neighborhood excludes own nets") {
    SUBCASE("isolated gate at radius 1") {
        Netlist nl;
        NetId a = nl.add_primary_input("a");
        NetId b = nl.add_primary_input("b");
        NetId o = nl.add_net("o");
        GateId g = nl.add_gate(GateKind::And, {a, b}, o);
        nl.mark_primary_output(o);
        CHECK(neighborhood_nets(nl, g, 1).empty());
    }
    SUBCASE("chain at radius 2 reaches the grandchild output") {
        Netlist nl;
        NetId a = nl.add_primary_input("a");
        NetId n1 = nl.add_net("n1");
        NetId n2 = nl.add_net("n2");
        NetId n3 = nl.add_net("n3");
        nl.add_gate(GateKind::Inv, {a}, n1);
        GateId g2 = nl.add_gate(GateKind::Inv, {n1}, n2);
        nl.add_gate(GateKind::Inv, {n2}, n3);
        nl.mark_primary_output(n3);
        std::vector<NetId> nbr = neighborhood_nets(nl, g2, 2);
        std::set<NetId> s(nbr.begin(), nbr.end());
        CHECK(s.count(n3) == 1);
        CHECK(s.count(a) == 1);
        CHECK(s.count(n1) == 0);
        CHECK(s.count(n2) == 0);
    }
    SUBCASE("errors") {
        Netlist nl;
        NetId a = nl.add_primary_input("a");
        NetId o = nl.add_net("o");
        GateId g = nl.add_gate(GateKind::Buf, {a}, o);
        CHECK_THROWS_AS(neighborhood_nets(nl, g + 5, 1), Error);
        CHECK_THROWS_AS(neighborhood_nets(nl, g, 0), Error);
    }
}

TEST_CASE("neighborhood is monotone in radius") {
    Netlist nl = testing::random_netlist(6, 60, 99);
    for (GateId g = 0; g < nl.num_gates(); g += 7) {
        std::vector<NetId> small = neighborhood_nets(nl, g, 2);
        std::vector<NetId> big = neighborhood_nets(nl, g, 4);
        std::set<NetId> big_set(big.begin(), big.end());
        for (NetId n : small)
            CHECK(big_set.count(n) == 1);
    }
}

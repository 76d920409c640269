#pragma once

// Test-side oracles, independent of the library code paths they check.

#include <cctype>
#include <cstdint>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "camo/netlist.hpp"
#include "camo/rng.hpp"

namespace camo::testing {

// Truth-table evaluator built directly from BENCH text with its own tiny
// parser; shares nothing with camo::parse_bench or camo::Simulator.
class TruthTableOracle {
public:
    explicit TruthTableOracle(const std::string& text) {
        std::istringstream in(text);
        std::string line;
        while (std::getline(in, line)) {
            auto hash = line.find('#');
            if (hash != std::string::npos)
                line = line.substr(0, hash);
            std::string compact;
            for (char c : line)
                if (!std::isspace(static_cast<unsigned char>(c)))
                    compact.push_back(c);
            if (compact.empty())
                continue;
            if (compact.rfind("INPUT(", 0) == 0) {
                inputs_.push_back(compact.substr(6, compact.size() - 7));
            } else if (compact.rfind("OUTPUT(", 0) == 0) {
                outputs_.push_back(compact.substr(7, compact.size() - 8));
            } else {
                auto eq = compact.find('=');
                std::string lhs = compact.substr(0, eq);
                std::string rhs = compact.substr(eq + 1);
                Def def;
                if (rhs == "CONST0" || rhs == "TIE0()") {
                    def.op = "TIE0";
                } else if (rhs == "CONST1" || rhs == "TIE1()") {
                    def.op = "TIE1";
                } else {
                    auto paren = rhs.find('(');
                    def.op = rhs.substr(0, paren);
                    std::string args = rhs.substr(paren + 1, rhs.size() - paren - 2);
                    std::size_t start = 0;
                    while (start < args.size()) {
                        auto comma = args.find(',', start);
                        if (comma == std::string::npos) {
                            def.args.push_back(args.substr(start));
                            break;
                        }
                        def.args.push_back(args.substr(start, comma - start));
                        start = comma + 1;
                    }
                }
                defs_[lhs] = def;
            }
        }
    }

    const std::vector<std::string>& inputs() const { return inputs_; }
    const std::vector<std::string>& outputs() const { return outputs_; }

    // pattern bit i = value of inputs()[i]
    std::vector<bool> eval(std::uint64_t pattern) const {
        std::map<std::string, bool> memo;
        for (std::size_t i = 0; i < inputs_.size(); ++i)
            memo[inputs_[i]] = (pattern >> i) & 1;
        std::vector<bool> out;
        for (const std::string& name : outputs_)
            out.push_back(eval_net(name, memo));
        return out;
    }

private:
    struct Def {
        std::string op;
        std::vector<std::string> args;
    };

    bool eval_net(const std::string& name, std::map<std::string, bool>& memo) const {
        auto hit = memo.find(name);
        if (hit != memo.end())
            return hit->second;
        auto it = defs_.find(name);
        if (it == defs_.end())
            throw std::runtime_error("oracle: undefined net " + name);
        const Def& d = it->second;
        std::vector<bool> vals;
        for (const std::string& a : d.args)
            vals.push_back(eval_net(a, memo));
        bool r;
        if (d.op == "AND" || d.op == "NAND") {
            r = true;
            for (bool v : vals)
                r = r && v;
            if (d.op == "NAND")
                r = !r;
        } else if (d.op == "OR" || d.op == "NOR") {
            r = false;
            for (bool v : vals)
                r = r || v;
            if (d.op == "NOR")
                r = !r;
        } else if (d.op == "XOR") {
            r = vals[0] != vals[1];
        } else if (d.op == "XNOR") {
            r = vals[0] == vals[1];
        } else if (d.op == "NOT" || d.op == "INV") {
            r = !vals[0];
        } else if (d.op == "BUF" || d.op == "BUFF") {
            r = vals[0];
        } else if (d.op == "TIE0") {
            r = false;
        } else if (d.op == "TIE1") {
            r = true;
        } else {
            throw std::runtime_error("oracle: unknown op " + d.op);
        }
        memo[name] = r;
        return r;
    }

    std::vector<std::string> inputs_, outputs_;
    std::map<std::string, Def> defs_;
};

// Small random DAG circuit for property tests.
inline Netlist random_netlist(int num_pi, int num_gates, std::uint64_t seed,
                              double repeater_share = 0.25, int num_po = 0) {
    Rng rng(seed);
    Netlist nl("rand" + std::to_string(seed));
    std::vector<NetId> nets;
    for (int i = 0; i < num_pi; ++i)
        nets.push_back(nl.add_primary_input("pi" + std::to_string(i)));
    constexpr GateKind two_in[6] = {GateKind::And,  GateKind::Nand, GateKind::Or,
                                    GateKind::Nor,  GateKind::Xor,  GateKind::Xnor};
    for (int i = 0; i < num_gates; ++i) {
        NetId out = nl.add_net("g" + std::to_string(i));
        if (rng.coin(repeater_share)) {
            GateKind k = rng.below(2) ? GateKind::Inv : GateKind::Buf;
            NetId a = nets[rng.below(nets.size())];
            nl.add_gate(k, {a}, out);
        } else {
            GateKind k = two_in[rng.below(6)];
            NetId a = nets[rng.below(nets.size())];
            NetId b = nets[rng.below(nets.size())];
            while (b == a && nets.size() > 1)
                b = nets[rng.below(nets.size())];
            nl.add_gate(k, {a, b}, out);
        }
        nets.push_back(out);
    }
    if (num_po <= 0)
        num_po = std::max(1, num_gates / 8);
    for (int i = 0; i < num_po && i < num_gates; ++i)
        nl.mark_primary_output(nets[nets.size() - 1 - static_cast<std::size_t>(i)]);
    nl.validate();
    return nl;
}

// Brute-force SAT oracle for DIMACS-style clauses over <= 24 variables.
inline bool brute_force_sat(int num_vars, const std::vector<std::vector<int>>& clauses,
                            std::uint32_t* model_out = nullptr) {
    for (std::uint32_t m = 0; m < (1u << num_vars); ++m) {
        bool ok = true;
        for (const auto& cl : clauses) {
            bool sat = false;
            for (int lit : cl) {
                int v = std::abs(lit) - 1;
                bool val = (m >> v) & 1;
                if (lit < 0 ? !val : val) {
                    sat = true;
                    break;
                }
            }
            if (!sat) {
                ok = false;
                break;
            }
        }
        if (ok) {
            if (model_out)
                *model_out = m;
            return true;
        }
    }
    return false;
}

// Canonical structural description: per-net driver kind and input names.
inline std::string canonical_form(const Netlist& nl) {
    std::ostringstream out;
    std::vector<std::string> lines;
    for (GateId g = 0; g < nl.num_gates(); ++g) {
        const Gate& gate = nl.gate(g);
        std::string line = nl.net(gate.output).name;
        line += "=";
        line += to_string(gate.kind);
        line += "(";
        for (std::size_t i = 0; i < gate.inputs.size(); ++i) {
            if (i)
                line += ",";
            line += nl.net(gate.inputs[i]).name;
        }
        line += ")";
        lines.push_back(std::move(line));
    }
    std::sort(lines.begin(), lines.end());
    out << "PI:";
    for (NetId pi : nl.primary_inputs())
        out << nl.net(pi).name << ",";
    out << " PO:";
    for (NetId po : nl.primary_outputs())
        out << nl.net(po).name << ",";
    out << " ";
    for (const auto& l : lines)
        out << l << ";";
    return out.str();
}

}  // namespace camo::testing

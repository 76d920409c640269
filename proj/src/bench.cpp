#include "camo/bench.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace camo {

namespace {

// lenient on read: the classic ISCAS files use purely numeric net names
bool is_name_start(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

bool is_name_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' ||
           c == '[' || c == ']';
}

struct Line {
    int number;
    std::string text;
};

struct GateDecl {
    int line;
    std::string output;
    GateKind kind;
    std::vector<std::string> args;
};

class BenchScanner {
public:
    BenchScanner(std::string_view text, int line) : text_(text), line_(line) {}

    void skip_ws() {
        while (pos_ < text_.size() &&
               std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool at_end() {
        skip_ws();
        return pos_ >= text_.size();
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!eat(c))
            fail(std::string("expected '") + c + "'");
    }

    std::string name() {
        skip_ws();
        if (pos_ >= text_.size() || !is_name_start(text_[pos_]))
            fail("expected a name");
        std::size_t start = pos_;
        while (pos_ < text_.size() && is_name_char(text_[pos_]))
            ++pos_;
        return std::string(text_.substr(start, pos_ - start));
    }

    [[noreturn]] void fail(const std::string& what) {
        throw Error("bench parse error at line " + std::to_string(line_) + ", column " +
                    std::to_string(pos_ + 1) + ": " + what);
    }

    std::size_t column() const { return pos_ + 1; }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
    int line_;
};

}  // namespace

Netlist parse_bench(std::string_view text, std::string name) {
    std::vector<Line> lines;
    {
        int number = 0;
        std::size_t start = 0;
        while (start <= text.size()) {
            std::size_t end = text.find('\n', start);
            if (end == std::string_view::npos)
                end = text.size();
            ++number;
            std::string_view raw = text.substr(start, end - start);
            std::size_t hash = raw.find('#');
            if (hash != std::string_view::npos)
                raw = raw.substr(0, hash);
            std::size_t a = 0, b = raw.size();
            while (a < b && std::isspace(static_cast<unsigned char>(raw[a])))
                ++a;
            while (b > a && std::isspace(static_cast<unsigned char>(raw[b - 1])))
                --b;
            if (b > a)
                lines.push_back(Line{number, std::string(raw.substr(a, b - a))});
            if (end == text.size())
                break;
            start = end + 1;
        }
    }

    std::vector<std::pair<int, std::string>> inputs;    // (line, name)
    std::vector<std::pair<int, std::string>> outputs;   // declaration order
    std::vector<GateDecl> gate_decls;

    for (const Line& line : lines) {
        BenchScanner sc(line.text, line.number);
        std::string first = sc.name();
        if (first == "INPUT" || first == "OUTPUT") {
            sc.expect('(');
            std::string arg = sc.name();
            sc.expect(')');
            if (!sc.at_end())
                sc.fail("trailing text after declaration");
            if (first == "INPUT")
                inputs.emplace_back(line.number, arg);
            else
                outputs.emplace_back(line.number, arg);
            continue;
        }
        // name = KIND(args...) or name = CONST0/1
        if (!sc.eat('='))
            sc.fail("expected '='");
        std::string rhs = sc.name();
        GateDecl decl;
        decl.line = line.number;
        decl.output = first;
        if (rhs == "CONST0" || rhs == "CONST1") {
            decl.kind = rhs == "CONST0" ? GateKind::Tie0 : GateKind::Tie1;
            if (!sc.at_end())
                sc.fail("trailing text after constant");
            gate_decls.push_back(std::move(decl));
            continue;
        }
        auto kind = gate_kind_from_string(rhs);
        if (!kind)
            sc.fail("unsupported gate keyword '" + rhs + "'");
        decl.kind = *kind;
        sc.expect('(');
        if (!sc.eat(')')) {
            for (;;) {
                decl.args.push_back(sc.name());
                if (sc.eat(')'))
                    break;
                sc.expect(',');
            }
        }
        if (!sc.at_end())
            sc.fail("trailing text after gate");
        int n = static_cast<int>(decl.args.size());
        if (n < min_arity(decl.kind) || n > max_arity(decl.kind))
            throw Error("bench parse error at line " + std::to_string(decl.line) + ": " +
                        to_string(decl.kind) + " with " + std::to_string(n) + " inputs");
        gate_decls.push_back(std::move(decl));
    }

    // Names that may be referenced: INPUT declarations plus gate outputs.
    std::unordered_map<std::string, int> declared;  // name -> declaring line
    Netlist netlist(std::move(name));
    for (const auto& [line, pi] : inputs) {
        if (declared.count(pi))
            throw Error("bench parse error at line " + std::to_string(line) + ": net '" +
                        pi + "' is multiply driven (first declared at line " +
                        std::to_string(declared[pi]) + ")");
        declared.emplace(pi, line);
        netlist.add_primary_input(pi);
    }
    for (const GateDecl& decl : gate_decls) {
        if (declared.count(decl.output))
            throw Error("bench parse error at line " + std::to_string(decl.line) +
                        ": net '" + decl.output + "' is multiply driven (first declared at line " +
                        std::to_string(declared[decl.output]) + ")");
        declared.emplace(decl.output, decl.line);
    }

    // Nets are created in file order: PIs first (above), then each gate line
    // creates its output net followed by any not-yet-seen argument nets.
    auto net_of = [&](const std::string& nm, int line) -> NetId {
        if (auto id = netlist.find_net(nm))
            return *id;
        if (!declared.count(nm))
            throw Error("bench parse error at line " + std::to_string(line) +
                        ": undeclared net '" + nm + "'");
        return netlist.add_net(nm);
    };

    for (const GateDecl& decl : gate_decls) {
        NetId out = net_of(decl.output, decl.line);
        std::vector<NetId> ins;
        ins.reserve(decl.args.size());
        for (const std::string& arg : decl.args)
            ins.push_back(net_of(arg, decl.line));
        netlist.add_gate(decl.kind, ins, out);
    }
    for (const auto& [line, po] : outputs) {
        if (!declared.count(po))
            throw Error("bench parse error at line " + std::to_string(line) +
                        ": undeclared net '" + po + "'");
        netlist.mark_primary_output(net_of(po, line));
    }

    netlist.validate();
    return netlist;
}

Netlist parse_bench_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    std::string base = path;
    std::size_t slash = base.find_last_of('/');
    if (slash != std::string::npos)
        base = base.substr(slash + 1);
    std::size_t dot = base.find_last_of('.');
    if (dot != std::string::npos && dot > 0)
        base = base.substr(0, dot);
    return parse_bench(buf.str(), base);
}

std::string write_bench(const Netlist& netlist) {
    std::string out;
    out += "# " + netlist.name() + "\n";
    for (NetId pi : netlist.primary_inputs())
        out += "INPUT(" + netlist.net(pi).name + ")\n";
    for (NetId po : netlist.primary_outputs())
        out += "OUTPUT(" + netlist.net(po).name + ")\n";
    for (GateId g = 0; g < netlist.num_gates(); ++g) {
        const Gate& gate = netlist.gate(g);
        out += netlist.net(gate.output).name;
        out += " = ";
        out += to_string(gate.kind);
        out += "(";
        for (std::size_t i = 0; i < gate.inputs.size(); ++i) {
            if (i)
                out += ", ";
            out += netlist.net(gate.inputs[i]).name;
        }
        out += ")\n";
    }
    return out;
}

void write_bench_file(const Netlist& netlist, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error("cannot write '" + path + "'");
    out << write_bench(netlist);
}

}  // namespace camo

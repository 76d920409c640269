#pragma once

#include <string>
#include <string_view>

#include "camo/netlist.hpp"

namespace camo {

// BENCH dialect:
//   # comment
//   INPUT(name)
//   OUTPUT(name)
//   name = KIND(arg, ...)          KIND in AND/NAND/OR/NOR/XOR/XNOR/NOT/BUF
//   name = TIE0()  |  name = TIE1()
//   name = CONST0  |  name = CONST1      (accepted on read)
// Names match [A-Za-z_][A-Za-z0-9_.\[\]]*. Gate lines may reference nets
// defined later in the file.
Netlist parse_bench(std::string_view text, std::string name = "top");
Netlist parse_bench_file(const std::string& path);

std::string write_bench(const Netlist& netlist);
void write_bench_file(const Netlist& netlist, const std::string& path);

}  // namespace camo

#pragma once

#include <stdexcept>
#include <string>

#include "ppopt/circuit.hpp"

namespace ppopt {

struct ParseError : std::runtime_error {
    enum class Kind { Syntax, UnsupportedGate, MultipleRegisters };
    Kind kind;
    int line;
    ParseError(Kind k, int line, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line) + ": " + msg), kind(k), line(line) {}
};

// Parses the OpenQASM 2.0 subset: one qreg, gates
// {cx, rz, h, x, t, tdg, s, sdg, z, swap, ccx}.  Named phase gates are
// desugared to rz and ccx is expanded to the 6-CNOT Clifford+T network.
// Comments and barriers are dropped.
Circuit parse_qasm(const std::string& text);
Circuit parse_qasm_file(const std::string& path);

std::string emit_qasm(const Circuit& c, bool decompose_swap = false);
void write_qasm_file(const Circuit& c, const std::string& path, bool decompose_swap = false);

// The 15-gate Clifford+T expansion of ccx used by the parser.
std::vector<Gate> ccx_gates(int a, int b, int c);

}  // namespace ppopt

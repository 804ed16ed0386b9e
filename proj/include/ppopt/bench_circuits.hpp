#pragma once

#include <string>
#include <vector>

namespace ppopt::bench {

// Clifford+T benchmark circuits in OpenQASM 2.0 text form.  Multi-control
// gates are expanded to the standard 6-CNOT Toffoli network and trivially
// adjacent cancellations (H H, identical CX pairs, T T†) are removed, the
// form these circuits are customarily distributed in.
std::string tof(int controls);          // V-chain with clean ancillas
std::string barenco_tof(int controls);  // dirty-ancilla network, 4(n-2) Toffolis
std::string vbe_adder(int bits);        // carry-ripple adder
std::string mod5_4();

struct NamedCircuit {
    std::string name;
    std::string qasm;
};
// tof_3, barenco_tof_3, mod5_4, tof_4, tof_5, barenco_tof_4, vbe_adder_3
std::vector<NamedCircuit> small_suite();

void write_suite(const std::string& dir);

}  // namespace ppopt::bench

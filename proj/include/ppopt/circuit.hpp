#pragma once

#include <string>
#include <vector>

#include "ppopt/angle.hpp"

namespace ppopt {

struct Gate {
    enum class Kind { Cnot, Rz, H, X, Swap, Other1Q };

    Kind kind = Kind::H;
    int q0 = 0;       // control for Cnot, first qubit for Swap, the qubit otherwise
    int q1 = -1;      // target for Cnot, second qubit for Swap
    Angle angle;      // Rz only
    std::string name; // Other1Q only

    static Gate cnot(int control, int target);
    static Gate rz(int q, Angle a);
    static Gate h(int q);
    static Gate x(int q);
    static Gate swap(int a, int b);
    static Gate other(std::string name, int q);

    bool is_two_qubit() const { return kind == Kind::Cnot || kind == Kind::Swap; }
    // In-block gates for phase polynomial extraction.
    bool is_phase_poly() const {
        return kind == Kind::Cnot || kind == Kind::Rz || kind == Kind::X;
    }
    Gate inverse() const;

    bool operator==(const Gate& o) const;
};

struct Circuit {
    int qubit_count = 0;
    std::vector<Gate> gates;
    std::string name;

    int count(Gate::Kind k) const;
    int cnot_count() const { return count(Gate::Kind::Cnot); }
    int swap_count() const { return count(Gate::Kind::Swap); }
    int total_gates() const { return static_cast<int>(gates.size()); }
    // CNOT count with each SWAP weighted as three CNOTs.
    int weighted_cnot() const { return cnot_count() + 3 * swap_count(); }

    Circuit reversed() const;  // inverse circuit (gates reversed and inverted)

    bool operator==(const Circuit& o) const;
};

}  // namespace ppopt

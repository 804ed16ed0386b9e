#include "ppopt/circuit.hpp"

#include <algorithm>
#include <stdexcept>

namespace ppopt {

Gate Gate::cnot(int control, int target) {
    if (control == target) throw std::invalid_argument("cnot control equals target");
    Gate g;
    g.kind = Kind::Cnot;
    g.q0 = control;
    g.q1 = target;
    return g;
}

Gate Gate::rz(int q, Angle a) {
    Gate g;
    g.kind = Kind::Rz;
    g.q0 = q;
    g.angle = a;
    return g;
}

Gate Gate::h(int q) {
    Gate g;
    g.kind = Kind::H;
    g.q0 = q;
    return g;
}

Gate Gate::x(int q) {
    Gate g;
    g.kind = Kind::X;
    g.q0 = q;
    return g;
}

Gate Gate::swap(int a, int b) {
    if (a == b) throw std::invalid_argument("swap qubits equal");
    Gate g;
    g.kind = Kind::Swap;
    g.q0 = a;
    g.q1 = b;
    return g;
}

Gate Gate::other(std::string name, int q) {
    Gate g;
    g.kind = Kind::Other1Q;
    g.q0 = q;
    g.name = std::move(name);
    return g;
}

Gate Gate::inverse() const {
    if (kind == Kind::Rz) return rz(q0, -angle);
    if (kind == Kind::Other1Q)
        throw std::invalid_argument("cannot invert opaque gate " + name);
    return *this;  // Cnot, H, X, Swap are self-inverse
}

bool Gate::operator==(const Gate& o) const {
    if (kind != o.kind || q0 != o.q0 || q1 != o.q1) return false;
    if (kind == Kind::Rz && angle != o.angle) return false;
    if (kind == Kind::Other1Q && name != o.name) return false;
    return true;
}

int Circuit::count(Gate::Kind k) const {
    return static_cast<int>(
        std::count_if(gates.begin(), gates.end(), [&](const Gate& g) { return g.kind == k; }));
}

Circuit Circuit::reversed() const {
    Circuit r;
    r.qubit_count = qubit_count;
    r.name = name.empty() ? "" : name + "_rev";
    r.gates.reserve(gates.size());
    for (auto it = gates.rbegin(); it != gates.rend(); ++it) r.gates.push_back(it->inverse());
    return r;
}

bool Circuit::operator==(const Circuit& o) const {
    return qubit_count == o.qubit_count && gates == o.gates;
}

}  // namespace ppopt

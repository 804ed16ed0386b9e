#pragma once

#include "ppopt/circuit.hpp"

namespace ppopt {

struct Metrics {
    int total_gates = 0;
    int cnot_count = 0;
    int rz_count = 0;
    int swap_count = 0;
    int weighted_cnot = 0;  // cnot + 3 * swap
    double wall_time_s = 0;

    static Metrics of(const Circuit& c) {
        Metrics m;
        m.total_gates = c.total_gates();
        m.cnot_count = c.cnot_count();
        m.rz_count = c.count(Gate::Kind::Rz);
        m.swap_count = c.swap_count();
        m.weighted_cnot = m.cnot_count + 3 * m.swap_count;
        return m;
    }
};

}  // namespace ppopt

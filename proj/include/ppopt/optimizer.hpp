#pragma once

#include "ppopt/engine.hpp"

namespace ppopt {

struct TooManyQubits : std::runtime_error {
    TooManyQubits(int circuit, int hw)
        : std::runtime_error("circuit needs " + std::to_string(circuit) +
                             " qubits but the coupling graph has " + std::to_string(hw)) {}
};

struct BlockLog {
    int lines = 0, terms = 0, block_count = 1;
    int cnots = 0;
    EngineStats stats;
};

struct OptimizeOptions {
    int group_size = 1;
    EngineConfig engine;
    int hw_rounds = 3;  // forward/backward mapping-refinement round trips
    bool allow_swaps = true;
};

struct OptimizeResult {
    Circuit circuit;  // logical gates; physical gates in hardware mode
    Angle global_phase;
    bool any_timeout = false;
    bool any_fallback = false;
    std::vector<BlockLog> blocks;
    Mapping initial_mapping;  // hardware mode only
    Mapping final_mapping;
};

OptimizeResult optimize_circuit(const Circuit& c, const OptimizeOptions& opt = {});

OptimizeResult hw_optimize(const Circuit& c, const CouplingGraph& g,
                           const OptimizeOptions& opt = {});

// Swap-free resynthesis restricted to a line; placement[q] is the line
// position of circuit qubit q.  Throws if no swap-free solution is found.
Circuit linear_template(const Circuit& c, const std::vector<int>& placement,
                        const EngineConfig& cfg = {});

bool connectivity_audit(const Circuit& physical, const CouplingGraph& g);

}  // namespace ppopt

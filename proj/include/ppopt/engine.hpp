#pragma once

#include <optional>

#include "ppopt/blocks.hpp"
#include "ppopt/coupling.hpp"
#include "ppopt/parity_matrix.hpp"

namespace ppopt {

struct EngineConfig {
    int queue_capacity = 10000;
    int solution_count = 10000;
    double per_block_timeout_s = 400.0;
    int cnot_upper_bound = -1;  // prune paths that cannot beat this, <0 = off
    bool verbose = false;
};

struct EngineStats {
    long nodes_expanded = 0;
    long nodes_dropped = 0;
    long solutions_found = 0;
    double wall_time_s = 0;
    bool timed_out = false;
    bool used_fallback = false;
};

struct BlockResult {
    std::vector<Gate> gates;           // logical stream incl. barrier gates
    std::vector<Gate> physical_gates;  // hardware mode only; swaps included
    Angle phase_delta;                 // block phase not realized by the gates
    int cnots = 0;                     // emitted CNOTs (hw: plus 3 per swap)
    int swaps = 0;
    EngineStats stats;
};

struct HwContext {
    const CouplingGraph* graph = nullptr;
    bool allow_swaps = true;
};

// Space-bounded best-first search over joint parity matrix states.
// Returns the best solution by CNOT count, falling back to the
// rotation-merged replay of the block when the search yields nothing.
BlockResult synthesize_block(const PhaseBlock& b, const EngineConfig& cfg);

// Coupling-aware variant: every emitted two-qubit gate is adjacent under
// the evolving mapping; the mapping is updated in place.
BlockResult synthesize_block_hw(const PhaseBlock& b, const EngineConfig& cfg,
                                const HwContext& hw, Mapping& mapping);

// Shortest physical path between a and b where entering an active qubit
// costs 1 and entering any other qubit costs 3.
int weighted_dist(const CouplingGraph& g, const std::vector<bool>& active, int a, int b);

// Hardware heuristics exposed for tests.
double hw_h1(const JointParityMatrix& m, const CouplingGraph& g, const Mapping& map,
             const PhaseBlock& b);
double hw_h2(const JointParityMatrix& m, const CouplingGraph& g, const Mapping& map,
             const PhaseBlock& b);

// Inserts swaps until a and b are adjacent; emits them through sink().
template <typename Sink>
void route_to_adjacent(const CouplingGraph& g, Mapping& map, int la, int lb, Sink&& sink) {
    int pa = map.phys(la), pb = map.phys(lb);
    while (!g.adjacent(pa, pb)) {
        int best = -1;
        for (int nb : g.neighbors(pa))
            if (g.hop_dist(nb, pb) < g.hop_dist(pa, pb) && (best < 0 || nb < best)) best = nb;
        sink(pa, best);
        map.swap_physical(pa, best);
        pa = best;
    }
}

}  // namespace ppopt

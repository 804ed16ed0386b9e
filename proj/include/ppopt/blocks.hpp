#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "ppopt/canonical.hpp"
#include "ppopt/circuit.hpp"

namespace ppopt {

struct SsaQubit {
    int original;  // circuit qubit line
    int version;   // bumped at every non-{CNOT,Rz,X} gate on the line
    bool operator==(const SsaQubit& o) const {
        return original == o.original && version == o.version;
    }
};

// A non-phase gate inside a merged region.  Each slot pins the exact value
// one line must hold when the gate fires; afterwards the line carries a
// fresh SSA variable.
struct BarrierEvent {
    Gate gate;
    struct Slot {
        int line;        // original qubit index
        BitVec required; // parity over region variables
        bool affine;
        int dying_var;
        int fresh_var;
    };
    std::vector<Slot> slots;
};

// One synthesizable unit: a single {CNOT,Rz,X} block, or up to group_size
// consecutive blocks fused across their separating barrier gates.
struct PhaseBlock {
    int circuit_qubits = 0;
    std::vector<int> lines;     // sorted original qubit indices in use
    int var_count = 0;          // inputs plus one per barrier slot
    std::vector<SsaQubit> var_labels;
    std::vector<int> input_var;  // per line slot (index into lines)
    std::vector<std::pair<BitVec, Angle>> terms;  // parity over vars -> angle
    std::vector<BarrierEvent> events;             // in original order
    std::vector<BitVec> final_rows;               // per line slot, over vars
    BitVec final_affine;                          // per line slot
    std::vector<int> final_var;                   // per line slot
    Angle global_phase;
    std::vector<Gate> original_gates;  // the exact source gate run

    int block_count = 1;  // constituent single blocks (group size used)
    bool has_phase_content() const { return !terms.empty(); }
};

// Circuit = alternating sequence of regions and loose barrier gates.
using Segment = std::variant<PhaseBlock, Gate>;

// Builds a region from a gate run (phase gates plus interior barriers).
PhaseBlock build_region(const std::vector<Gate>& gates, int circuit_qubits);

// Splits into maximal phase-polynomial runs; every other gate becomes a
// loose barrier segment.  Replaying all segments in order reproduces the
// input circuit exactly.
std::vector<Segment> partition(const Circuit& c);

// Fuses runs of up to group_size consecutive regions, absorbing the
// barrier gates between them as events.
std::vector<Segment> merge_blocks(const std::vector<Segment>& segs, int group_size);

// Replays a candidate gate stream for the region: checks every barrier
// slot sees its required value, terms and output map match, and returns
// the replayed global phase.  nullopt on any mismatch.
std::optional<Angle> validate_region(const PhaseBlock& b, const std::vector<Gate>& gates);

// Original gates with same-parity rotations merged into their first
// occurrence; the guaranteed fallback result.
std::vector<Gate> rotation_merged_replay(const PhaseBlock& b);

}  // namespace ppopt

#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "ppopt/bitvec.hpp"
#include "ppopt/circuit.hpp"

namespace ppopt {

// Sum-over-paths data of a {CNOT, Rz, X} circuit: phase terms over the
// input parities, the output linear map, the affine output bits, and the
// accumulated global phase.  Two such circuits are equivalent iff their
// canonical forms are equal.
struct CanonicalForm {
    std::vector<std::pair<BitVec, Angle>> terms;  // sorted by parity, angles nonzero
    std::vector<BitVec> output_rows;              // row i = parity held by wire i
    BitVec affine;
    Angle global_phase;

    bool operator==(const CanonicalForm& o) const;
    bool equivalent_up_to_phase(const CanonicalForm& o) const;
};

// Running state of the forward simulation: one parity row and one affine
// bit per wire, over a caller-chosen variable space.
class PhaseTracker {
public:
    PhaseTracker(int wires, int vars);

    // wire w initially holds variable v
    void bind(int w, int v);

    void apply(const Gate& g);  // Cnot, Rz or X; throws on anything else
    void apply_cnot(int control, int target);
    void apply_x(int w);
    void apply_rz(int w, const Angle& a);
    // Replace wire w's content with a fresh variable (barrier output).
    void rebind(int w, int v);

    const BitVec& row(int w) const { return rows_[w]; }
    bool affine_bit(int w) const { return affine_.test(w); }
    const Angle& global_phase() const { return phase_; }

    // Merged duplicate parities, zero-sum terms removed, sorted.
    std::vector<std::pair<BitVec, Angle>> merged_terms() const;
    CanonicalForm form() const;

private:
    std::vector<BitVec> rows_;
    BitVec affine_;  // one bit per wire
    std::vector<std::pair<BitVec, Angle>> raw_terms_;
    Angle phase_;
};

struct NonPhasePolyGate : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Full-circuit canonical form; the circuit must contain only CNOT, Rz, X.
CanonicalForm canonical_form(const Circuit& c);

}  // namespace ppopt

#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "ppopt/bitvec.hpp"
#include "ppopt/blocks.hpp"

namespace ppopt {

struct SameQubit : std::logic_error {
    SameQubit() : std::logic_error("cnot control equals target") {}
};
struct NotCompletable : std::logic_error {
    NotCompletable() : std::logic_error("column does not have Hamming weight 1") {}
};
struct SingularMatrix : std::logic_error {
    SingularMatrix() : std::logic_error("output submatrix lost invertibility") {}
};

// Reduces an invertible GF(2) matrix to the identity using row ops
// row_a ^= row_b; returns the ops in order.  Columns are eliminated in a
// greedy order picking the pivot that minimizes the resulting total
// Hamming weight, ties broken by lowest index.
std::vector<std::pair<int, int>> gaussian_ops(std::vector<BitVec> rows);

// The joint phase/output parity matrix.  One row per SSA variable of the
// block; columns are [phase terms | barrier checkpoints | output map].
// Convention (matching the worked transform in the source model): the
// emitted gate CNOT(control, target) XORs the control wire into the
// target wire at circuit level, and XORs row_target into row_control
// here -- parities transform contravariantly.
class JointParityMatrix {
public:
    static JointParityMatrix from_block(const PhaseBlock& b);

    int row_count() const { return static_cast<int>(rows_.size()); }
    int line_count() const;
    int live_phase_count() const;
    bool phase_empty() const { return !live_phase_.any(); }
    bool all_crossed() const;

    const BitVec& row(int r) const { return rows_[r]; }
    const BitVec& live_phase_mask() const { return live_phase_; }
    const BitVec& live_mask() const { return live_all_; }
    int active_row(int line) const { return active_row_[line]; }
    int col_weight(int col) const { return col_weight_[col]; }
    const Angle& phase_angle(int col) const;
    int event_cursor() const { return cursor_; }

    // row_control ^= row_target across all live columns
    void apply_cnot_inplace(int control_row, int target_row);
    JointParityMatrix apply_cnot(int control_row, int target_row) const;

    // live phase columns of weight 1, paired with the row holding the 1;
    // only rows that are currently active qualify
    std::vector<std::pair<int, int>> completable_columns() const;
    void remove_column(int col);

    // next barrier event, if its checkpoint columns are satisfied and the
    // dying rows carry no other live dependence
    bool can_cross() const;
    void cross();

    // hamming-weight cost of the phase part (plus checkpoint distance in
    // merged regions)
    double h1() const { return phase_weight() + checkpoint_cost(); }
    double phase_weight() const;
    double checkpoint_cost() const;
    std::vector<int> next_event_checkpoint_cols() const;  // empty if all crossed
    int checkpoint_dying_row(int col) const;
    // exact Gaussian-elimination gate count once every event is crossed,
    // otherwise a per-column distance estimate
    double h2_estimate() const;
    // row ops (in line space) reducing the output submatrix to identity;
    // requires all events crossed
    std::vector<std::pair<int, int>> gaussian_finish() const;

    std::size_t state_hash() const;
    bool same_state(const JointParityMatrix& o) const;

    // rows of 01 with a '|' between phase and output parts (live columns)
    std::string dump() const;

    int phase_col_of_term(int term_index) const { return term_index; }
    int output_col(int line) const;
    int checkpoint_col(int k) const;

private:
    struct Layout;
    std::shared_ptr<const Layout> lay_;

    std::vector<BitVec> rows_;
    BitVec live_phase_;  // over column space
    BitVec live_all_;    // phase + pending checkpoints + outputs
    std::vector<std::uint16_t> col_weight_;
    std::vector<int> active_row_;  // per line slot
    int cursor_ = 0;

    void xor_rows(int dst, int src);
};

}  // namespace ppopt

#include "ppopt/parity_matrix.hpp"

#include <algorithm>
#include <limits>

namespace ppopt {

std::vector<std::pair<int, int>> gaussian_ops(std::vector<BitVec> rows) {
    const int n = static_cast<int>(rows.size());
    std::vector<std::pair<int, int>> ops;
    std::vector<bool> done(n, false);

    auto total_weight = [](const std::vector<BitVec>& m) {
        int w = 0;
        for (const auto& r : m) w += r.popcount();
        return w;
    };

    // Eliminates column c in-place: makes it the unit vector e_c.
    auto eliminate = [&](std::vector<BitVec>& m, int c,
                         std::vector<std::pair<int, int>>* out) -> bool {
        if (!m[c].test(c)) {
            int best = -1, best_w = std::numeric_limits<int>::max();
            for (int r = 0; r < n; ++r) {
                if (r == c || done[r] || !m[r].test(c)) continue;
                BitVec tmp = m[c];
                tmp ^= m[r];
                int w = tmp.popcount();
                if (w < best_w) { best_w = w; best = r; }
            }
            if (best < 0) return false;
            m[c] ^= m[best];
            if (out) out->emplace_back(c, best);
        }
        for (int r = 0; r < n; ++r) {
            if (r == c || !m[r].test(c)) continue;
            m[r] ^= m[c];
            if (out) out->emplace_back(r, c);
        }
        return true;
    };

    for (int step = 0; step < n; ++step) {
        int best_c = -1, best_w = std::numeric_limits<int>::max();
        for (int c = 0; c < n; ++c) {
            if (done[c]) continue;
            std::vector<BitVec> sim = rows;
            if (!eliminate(sim, c, nullptr)) throw SingularMatrix();
            int w = total_weight(sim);
            if (w < best_w) { best_w = w; best_c = c; }
        }
        if (best_c < 0) throw SingularMatrix();
        if (!eliminate(rows, best_c, &ops)) throw SingularMatrix();
        done[best_c] = true;
    }
    return ops;
}

struct JointParityMatrix::Layout {
    int nlines = 0;
    int n_phase = 0, n_check = 0, n_out = 0;
    int ncols = 0;
    std::vector<Angle> phase_angle;
    struct Check {
        int line;      // line slot index
        int dying_row;
        int fresh_var;
    };
    std::vector<Check> checks;
    std::vector<std::vector<int>> event_checks;  // event -> checkpoint col ids
    std::vector<int> goal_row;                   // per line slot
    std::vector<int> line_slot_of_qubit;         // circuit qubit -> line slot (-1)
};

int JointParityMatrix::line_count() const { return lay_->nlines; }

int JointParityMatrix::output_col(int line) const {
    return lay_->n_phase + lay_->n_check + line;
}

int JointParityMatrix::checkpoint_col(int k) const { return lay_->n_phase + k; }

const Angle& JointParityMatrix::phase_angle(int col) const {
    return lay_->phase_angle[col];
}

int JointParityMatrix::live_phase_count() const { return live_phase_.popcount(); }

bool JointParityMatrix::all_crossed() const {
    return cursor_ == static_cast<int>(lay_->event_checks.size());
}

JointParityMatrix JointParityMatrix::from_block(const PhaseBlock& b) {
    auto lay = std::make_shared<Layout>();
    const int nlines = static_cast<int>(b.lines.size());
    lay->nlines = nlines;
    lay->n_phase = static_cast<int>(b.terms.size());
    int n_check = 0;
    for (const auto& ev : b.events) n_check += static_cast<int>(ev.slots.size());
    lay->n_check = n_check;
    lay->n_out = nlines;
    lay->ncols = lay->n_phase + lay->n_check + lay->n_out;
    lay->line_slot_of_qubit.assign(b.circuit_qubits, -1);
    for (int i = 0; i < nlines; ++i) lay->line_slot_of_qubit[b.lines[i]] = i;

    JointParityMatrix m;
    m.rows_.assign(b.var_count, BitVec(lay->ncols));
    m.live_phase_ = BitVec(lay->ncols);
    m.live_all_ = BitVec(lay->ncols);
    m.col_weight_.assign(lay->ncols, 0);

    for (int j = 0; j < lay->n_phase; ++j) {
        const auto& [parity, angle] = b.terms[j];
        lay->phase_angle.push_back(angle);
        parity.for_each_set([&](std::size_t v) { m.rows_[v].set(j); });
        m.live_phase_.set(j);
        m.live_all_.set(j);
        m.col_weight_[j] = static_cast<std::uint16_t>(parity.popcount());
    }
    int k = 0;
    for (const auto& ev : b.events) {
        std::vector<int> cols;
        for (const auto& s : ev.slots) {
            int col = lay->n_phase + k;
            lay->checks.push_back({lay->line_slot_of_qubit[s.line], s.dying_var, s.fresh_var});
            s.required.for_each_set([&](std::size_t v) { m.rows_[v].set(col); });
            m.live_all_.set(col);
            m.col_weight_[col] = static_cast<std::uint16_t>(s.required.popcount());
            cols.push_back(col);
            ++k;
        }
        lay->event_checks.push_back(std::move(cols));
    }
    for (int i = 0; i < nlines; ++i) {
        int col = lay->n_phase + lay->n_check + i;
        b.final_rows[i].for_each_set([&](std::size_t v) { m.rows_[v].set(col); });
        m.live_all_.set(col);
        m.col_weight_[col] = static_cast<std::uint16_t>(b.final_rows[i].popcount());
        lay->goal_row.push_back(b.final_var[i]);
    }

    m.active_row_.resize(nlines);
    for (int i = 0; i < nlines; ++i) m.active_row_[i] = b.input_var[i];
    m.cursor_ = 0;
    m.lay_ = std::move(lay);
    return m;
}

void JointParityMatrix::xor_rows(int dst, int src) {
    // update column weights over live columns before mutating
    const BitVec& s = rows_[src];
    BitVec affected = s;  // rows are kept clean of dead columns
    affected.for_each_set([&](std::size_t col) {
        if (rows_[dst].test(col))
            --col_weight_[col];
        else
            ++col_weight_[col];
    });
    rows_[dst] ^= s;
}

void JointParityMatrix::apply_cnot_inplace(int control_row, int target_row) {
    if (control_row == target_row) throw SameQubit();
    xor_rows(control_row, target_row);
}

JointParityMatrix JointParityMatrix::apply_cnot(int control_row, int target_row) const {
    JointParityMatrix m = *this;
    m.apply_cnot_inplace(control_row, target_row);
    return m;
}

std::vector<std::pair<int, int>> JointParityMatrix::completable_columns() const {
    std::vector<std::pair<int, int>> out;
    live_phase_.for_each_set([&](std::size_t col) {
        if (col_weight_[col] != 1) return;
        for (int line = 0; line < lay_->nlines; ++line) {
            int r = active_row_[line];
            if (rows_[r].test(col)) {
                out.emplace_back(static_cast<int>(col), r);
                return;
            }
        }
        // single 1 sits in a future row; completes after its event
    });
    return out;
}

void JointParityMatrix::remove_column(int col) {
    if (col_weight_[col] != 1 || !live_phase_.test(col)) throw NotCompletable();
    for (auto& r : rows_)
        if (r.test(col)) r.reset(col);
    live_phase_.reset(col);
    live_all_.reset(col);
    col_weight_[col] = 0;
}

bool JointParityMatrix::can_cross() const {
    if (all_crossed()) return false;
    const auto& cols = lay_->event_checks[cursor_];
    for (int col : cols) {
        const auto& chk = lay_->checks[col - lay_->n_phase];
        if (col_weight_[col] != 1 || !rows_[chk.dying_row].test(col)) return false;
    }
    // dying rows must carry nothing else that is still pending
    for (int col : cols) {
        const auto& chk = lay_->checks[col - lay_->n_phase];
        int pending = rows_[chk.dying_row].popcount_and(live_all_);
        int own = 0;
        for (int c2 : cols)
            if (rows_[chk.dying_row].test(c2)) ++own;
        if (pending != own) return false;
    }
    return true;
}

void JointParityMatrix::cross() {
    const auto& cols = lay_->event_checks[cursor_];
    for (int col : cols) {
        const auto& chk = lay_->checks[col - lay_->n_phase];
        rows_[chk.dying_row].reset(col);
        live_all_.reset(col);
        col_weight_[col] = 0;
        active_row_[chk.line] = chk.fresh_var;
    }
    ++cursor_;
}

double JointParityMatrix::phase_weight() const {
    int w = 0;
    live_phase_.for_each_set([&](std::size_t col) { w += col_weight_[col]; });
    return w;
}

double JointParityMatrix::checkpoint_cost() const {
    double extra = 0;
    for (int e = cursor_; e < static_cast<int>(lay_->event_checks.size()); ++e) {
        for (int col : lay_->event_checks[e]) {
            const auto& chk = lay_->checks[col - lay_->n_phase];
            int c = col_weight_[col] - 1 + (rows_[chk.dying_row].test(col) ? 0 : 1);
            extra += std::max(0, c);
        }
    }
    return extra;
}

std::vector<int> JointParityMatrix::next_event_checkpoint_cols() const {
    if (all_crossed()) return {};
    return lay_->event_checks[cursor_];
}

int JointParityMatrix::checkpoint_dying_row(int col) const {
    return lay_->checks[col - lay_->n_phase].dying_row;
}

double JointParityMatrix::h2_estimate() const {
    if (all_crossed()) {
        return static_cast<double>(gaussian_finish().size());
    }
    double sum = 0;
    for (int i = 0; i < lay_->nlines; ++i) {
        int col = output_col(i);
        int c = col_weight_[col] - 1 + (rows_[lay_->goal_row[i]].test(col) ? 0 : 1);
        sum += std::max(0, c);
    }
    return sum;
}

std::vector<std::pair<int, int>> JointParityMatrix::gaussian_finish() const {
    const int n = lay_->nlines;
    std::vector<BitVec> sq(n, BitVec(n));
    for (int i = 0; i < n; ++i) {
        const BitVec& r = rows_[active_row_[i]];
        for (int j = 0; j < n; ++j)
            if (r.test(output_col(j))) sq[i].set(j);
    }
    return gaussian_ops(std::move(sq));
}

std::size_t JointParityMatrix::state_hash() const {
    std::size_t h = 0x9e3779b97f4a7c15ull ^ static_cast<std::size_t>(cursor_);
    for (const auto& r : rows_) h = h * 1099511628211ull ^ r.hash();
    for (int a : active_row_) h = h * 31 + static_cast<std::size_t>(a);
    return h;
}

bool JointParityMatrix::same_state(const JointParityMatrix& o) const {
    return cursor_ == o.cursor_ && active_row_ == o.active_row_ && rows_ == o.rows_;
}

std::string JointParityMatrix::dump() const {
    std::string out;
    for (const auto& r : rows_) {
        for (int c = 0; c < lay_->n_phase; ++c)
            if (live_phase_.test(c)) out += r.test(c) ? '1' : '0';
        out += '|';
        for (int i = 0; i < lay_->nlines; ++i) out += r.test(output_col(i)) ? '1' : '0';
        out += '\n';
    }
    return out;
}

}  // namespace ppopt

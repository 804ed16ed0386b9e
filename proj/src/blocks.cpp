#include "ppopt/blocks.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace ppopt {

namespace {

std::vector<int> touched_lines(const std::vector<Gate>& gates) {
    std::set<int> s;
    for (const Gate& g : gates) {
        s.insert(g.q0);
        if (g.q1 >= 0) s.insert(g.q1);
    }
    return {s.begin(), s.end()};
}

std::vector<int> gate_wires(const Gate& g) {
    if (g.kind == Gate::Kind::Swap) return {g.q0, g.q1};
    return {g.q0};
}

}  // namespace

PhaseBlock build_region(const std::vector<Gate>& gates, int circuit_qubits) {
    PhaseBlock b;
    b.circuit_qubits = circuit_qubits;
    b.original_gates = gates;
    b.lines = touched_lines(gates);
    const int nlines = static_cast<int>(b.lines.size());

    int slots = 0;
    for (const Gate& g : gates)
        if (!g.is_phase_poly()) slots += static_cast<int>(gate_wires(g).size());
    b.var_count = nlines + slots;

    std::vector<int> line_slot(circuit_qubits, -1);
    for (int i = 0; i < nlines; ++i) line_slot[b.lines[i]] = i;

    PhaseTracker t(circuit_qubits, b.var_count);
    std::vector<int> cur_var(circuit_qubits, -1);
    std::vector<int> cur_version(circuit_qubits, 0);
    b.input_var.resize(nlines);
    b.var_labels.resize(b.var_count);
    for (int i = 0; i < nlines; ++i) {
        t.bind(b.lines[i], i);
        cur_var[b.lines[i]] = i;
        b.input_var[i] = i;
        b.var_labels[i] = SsaQubit{b.lines[i], 0};
    }

    int next_var = nlines;
    for (const Gate& g : gates) {
        if (g.is_phase_poly()) {
            t.apply(g);
            continue;
        }
        BarrierEvent ev;
        ev.gate = g;
        for (int w : gate_wires(g)) {
            BarrierEvent::Slot s;
            s.line = w;
            s.required = t.row(w);
            s.affine = t.affine_bit(w);
            s.dying_var = cur_var[w];
            s.fresh_var = next_var++;
            ev.slots.push_back(s);
        }
        for (const auto& s : ev.slots) {
            t.rebind(s.line, s.fresh_var);
            cur_var[s.line] = s.fresh_var;
            b.var_labels[s.fresh_var] = SsaQubit{s.line, ++cur_version[s.line]};
        }
        b.events.push_back(std::move(ev));
    }

    b.terms = t.merged_terms();
    b.final_rows.resize(nlines);
    b.final_affine = BitVec(nlines);
    b.final_var.resize(nlines);
    for (int i = 0; i < nlines; ++i) {
        int q = b.lines[i];
        b.final_rows[i] = t.row(q);
        if (t.affine_bit(q)) b.final_affine.set(i);
        b.final_var[i] = cur_var[q];
    }
    b.global_phase = t.global_phase();
    return b;
}

std::vector<Segment> partition(const Circuit& c) {
    std::vector<Segment> segs;
    std::vector<Gate> run;
    auto flush = [&]() {
        if (!run.empty()) {
            segs.emplace_back(build_region(run, c.qubit_count));
            run.clear();
        }
    };
    for (const Gate& g : c.gates) {
        if (g.is_phase_poly()) {
            run.push_back(g);
        } else {
            flush();
            segs.emplace_back(g);
        }
    }
    flush();
    return segs;
}

std::vector<Segment> merge_blocks(const std::vector<Segment>& segs, int group_size) {
    if (group_size <= 1) return segs;
    std::vector<Segment> out;
    std::size_t i = 0;
    const std::size_t n = segs.size();
    while (i < n) {
        if (std::holds_alternative<Gate>(segs[i])) {
            out.push_back(segs[i]);
            ++i;
            continue;
        }
        const auto& first = std::get<PhaseBlock>(segs[i]);
        std::vector<Gate> stream = first.original_gates;
        int taken = 1;
        std::size_t j = i + 1;
        std::vector<Gate> pend;
        while (taken < group_size) {
            std::size_t k = j;
            pend.clear();
            while (k < n && std::holds_alternative<Gate>(segs[k])) {
                pend.push_back(std::get<Gate>(segs[k]));
                ++k;
            }
            if (k >= n || !std::holds_alternative<PhaseBlock>(segs[k])) break;
            stream.insert(stream.end(), pend.begin(), pend.end());
            const auto& blk = std::get<PhaseBlock>(segs[k]);
            stream.insert(stream.end(), blk.original_gates.begin(), blk.original_gates.end());
            ++taken;
            j = k + 1;
        }
        if (taken == 1) {
            out.push_back(segs[i]);
        } else {
            PhaseBlock merged = build_region(stream, first.circuit_qubits);
            merged.block_count = taken;
            out.emplace_back(std::move(merged));
        }
        i = j;
    }
    return out;
}

std::optional<Angle> validate_region(const PhaseBlock& b, const std::vector<Gate>& gates) {
    PhaseTracker t(b.circuit_qubits, b.var_count);
    const int nlines = static_cast<int>(b.lines.size());
    for (int i = 0; i < nlines; ++i) t.bind(b.lines[i], b.input_var[i]);

    std::size_t cursor = 0;
    for (const Gate& g : gates) {
        if (g.is_phase_poly()) {
            t.apply(g);
            continue;
        }
        if (cursor >= b.events.size()) return std::nullopt;
        const BarrierEvent& ev = b.events[cursor];
        if (!(g == ev.gate)) return std::nullopt;
        for (const auto& s : ev.slots)
            if (t.row(s.line) != s.required || t.affine_bit(s.line) != s.affine)
                return std::nullopt;
        for (const auto& s : ev.slots) t.rebind(s.line, s.fresh_var);
        ++cursor;
    }
    if (cursor != b.events.size()) return std::nullopt;

    for (int i = 0; i < nlines; ++i) {
        int q = b.lines[i];
        if (t.row(q) != b.final_rows[i]) return std::nullopt;
        if (t.affine_bit(q) != b.final_affine.test(i)) return std::nullopt;
    }
    if (t.merged_terms() != b.terms) return std::nullopt;
    return t.global_phase();
}

std::vector<Gate> rotation_merged_replay(const PhaseBlock& b) {
    // First pass: locate each rotation's parity and pick merge sites.
    PhaseTracker t(b.circuit_qubits, b.var_count);
    const int nlines = static_cast<int>(b.lines.size());
    for (int i = 0; i < nlines; ++i) t.bind(b.lines[i], b.input_var[i]);

    struct Site {
        BitVec parity;
        bool affine;
    };
    std::vector<Site> sites(b.original_gates.size());
    std::map<BitVec, Angle> total;
    std::map<BitVec, std::size_t> first_site;

    std::size_t cursor = 0;
    for (std::size_t i = 0; i < b.original_gates.size(); ++i) {
        const Gate& g = b.original_gates[i];
        if (!g.is_phase_poly()) {
            for (const auto& s : b.events[cursor].slots) t.rebind(s.line, s.fresh_var);
            ++cursor;
            continue;
        }
        if (g.kind == Gate::Kind::Rz) {
            Site s{t.row(g.q0), t.affine_bit(g.q0)};
            Angle contrib = s.affine ? -g.angle : g.angle;
            auto [it, fresh] = total.emplace(s.parity, contrib);
            if (!fresh) it->second += contrib;
            first_site.emplace(s.parity, i);
            sites[i] = std::move(s);
            continue;  // rotations do not move parities
        }
        t.apply(g);
    }

    std::vector<Gate> out;
    out.reserve(b.original_gates.size());
    for (std::size_t i = 0; i < b.original_gates.size(); ++i) {
        const Gate& g = b.original_gates[i];
        if (g.kind != Gate::Kind::Rz) {
            out.push_back(g);
            continue;
        }
        const Site& s = sites[i];
        if (first_site[s.parity] != i) continue;
        Angle sum = total[s.parity];
        if (sum.is_zero()) continue;
        out.push_back(Gate::rz(g.q0, s.affine ? -sum : sum));
    }
    return out;
}

}  // namespace ppopt

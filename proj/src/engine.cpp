#include "ppopt/engine.hpp"

#include <algorithm>
#include <chrono>
#include <iostream>
#include <limits>
#include <queue>
#include <set>
#include <unordered_map>

namespace ppopt {

namespace {

using Clock = std::chrono::steady_clock;

struct Node {
    JointParityMatrix m;
    Mapping map;              // engaged in hardware mode only
    std::vector<Gate> gates;  // logical stream
    std::vector<Gate> phys;   // physical stream (hardware mode)
    int g = 0;                // CNOTs so far, swaps count 3
    double h1 = 0, h2 = 0;
    BitVec active;            // active phase-column set
    long seq = 0;
    int swaps = 0;

    double f() const { return g + h1 + h2; }
};

struct NodeCmp {
    bool operator()(const Node& a, const Node& b) const {
        if (a.f() != b.f()) return a.f() < b.f();
        if (a.h1 != b.h1) return a.h1 < b.h1;
        if (a.h2 != b.h2) return a.h2 < b.h2;
        if (a.g != b.g) return a.g > b.g;
        return a.seq < b.seq;
    }
};

struct Solution {
    std::vector<Gate> gates, phys;
    Mapping map;
    int cnots = 0, total = 0, swaps = 0;
    long order = 0;
};

std::vector<bool> phys_active_all(const CouplingGraph& g, const Mapping& map,
                                  const PhaseBlock& b) {
    std::vector<bool> act(g.node_count(), false);
    for (int q : b.lines) act[map.phys(q)] = true;
    return act;
}

// Active physical positions for one column: lines whose active row has a 1.
std::vector<int> col_active_phys(const JointParityMatrix& m, int col, const Mapping& map,
                                 const PhaseBlock& b) {
    std::vector<int> out;
    for (int i = 0; i < m.line_count(); ++i)
        if (m.row(m.active_row(i)).test(col)) out.push_back(map.phys(b.lines[i]));
    return out;
}

double col_pair_dist_sum(const CouplingGraph& g, const std::vector<int>& qa) {
    if (qa.size() < 2) return 0;
    std::vector<bool> act(g.node_count(), false);
    for (int p : qa) act[p] = true;
    double s = 0;
    for (int a : qa)
        for (int b : qa)
            if (a != b) s += weighted_dist(g, act, a, b);
    return s;
}

double col_min_pair_dist(const CouplingGraph& g, const std::vector<int>& qa) {
    if (qa.size() < 2) return 0;
    std::vector<bool> act(g.node_count(), false);
    for (int p : qa) act[p] = true;
    double best = std::numeric_limits<double>::max();
    for (int a : qa)
        for (int b : qa)
            if (a != b) best = std::min(best, static_cast<double>(weighted_dist(g, act, a, b)));
    return best;
}

class Search {
public:
    Search(const PhaseBlock& b, const EngineConfig& cfg, const HwContext* hw,
           const Mapping* map0)
        : b_(b), cfg_(cfg), hw_(hw), map0_(map0) {}

    BlockResult run();

private:
    const PhaseBlock& b_;
    const EngineConfig& cfg_;
    const HwContext* hw_;
    const Mapping* map0_;

    std::set<Node, NodeCmp> queue_;
    std::unordered_map<std::size_t, int> visited_;  // state hash -> best g
    std::unordered_map<std::size_t, double> h2_memo_;
    std::vector<Solution> solutions_;
    EngineStats stats_;
    long seq_ = 0;
    Clock::time_point deadline_;

    bool hw() const { return hw_ != nullptr; }
    const CouplingGraph& graph() const { return *hw_->graph; }

    int line_of_row(const JointParityMatrix& m, int row) const {
        for (int i = 0; i < m.line_count(); ++i)
            if (m.active_row(i) == row) return i;
        throw std::logic_error("row is not active");
    }

    void emit_phys_1q(Node& n, const Gate& g) {
        if (!hw()) return;
        Gate pg = g;
        pg.q0 = n.map.phys(g.q0);
        n.phys.push_back(pg);
    }

    // Routing swaps ahead of a two-qubit gate; updates mapping and cost.
    void route_pair(Node& n, int la, int lb) {
        if (!hw()) return;
        route_to_adjacent(graph(), n.map, la, lb, [&](int p1, int p2) {
            n.phys.push_back(Gate::swap(p1, p2));
            n.g += 3;
            ++n.swaps;
        });
    }

    void emit_cnot(Node& n, int qc, int qt) {
        n.gates.push_back(Gate::cnot(qc, qt));
        if (hw()) n.phys.push_back(Gate::cnot(n.map.phys(qc), n.map.phys(qt)));
    }

    // Completes weight-1 phase columns and crosses satisfied barrier
    // events until a fixpoint; emits the corresponding gates.
    void normalize(Node& n, bool& completed, bool& crossed) {
        bool changed = true;
        while (changed) {
            changed = false;
            for (auto [col, row] : n.m.completable_columns()) {
                int q = b_.lines[line_of_row(n.m, row)];
                Gate rz = Gate::rz(q, n.m.phase_angle(col));
                n.gates.push_back(rz);
                emit_phys_1q(n, rz);
                n.m.remove_column(col);
                completed = changed = true;
            }
            while (n.m.can_cross()) {
                const BarrierEvent& ev = b_.events[n.m.event_cursor()];
                for (const auto& s : ev.slots) {
                    if (s.affine) {
                        Gate xg = Gate::x(s.line);
                        n.gates.push_back(xg);
                        emit_phys_1q(n, xg);
                    }
                }
                n.gates.push_back(ev.gate);
                if (hw()) {
                    if (ev.gate.kind == Gate::Kind::Swap) {
                        route_pair(n, ev.gate.q0, ev.gate.q1);
                        n.phys.push_back(Gate::swap(n.map.phys(ev.gate.q0),
                                                    n.map.phys(ev.gate.q1)));
                    } else {
                        emit_phys_1q(n, ev.gate);
                    }
                }
                n.m.cross();
                crossed = changed = true;
            }
        }
    }

    double exact_h2(const JointParityMatrix& m) {
        std::size_t key = 0x2545f4914f6cdd1dull;
        for (int i = 0; i < m.line_count(); ++i) {
            const BitVec& r = m.row(m.active_row(i));
            for (int j = 0; j < m.line_count(); ++j)
                key = key * 131 + (r.test(m.output_col(j)) ? 1 : 0);
        }
        auto it = h2_memo_.find(key);
        if (it != h2_memo_.end()) return it->second;
        double v = static_cast<double>(m.gaussian_finish().size());
        h2_memo_.emplace(key, v);
        return v;
    }

    void score(Node& n) {
        if (hw()) {
            n.h1 = hw_h1(n.m, graph(), n.map, b_) + n.m.checkpoint_cost();
            n.h2 = n.m.all_crossed() ? hw_h2(n.m, graph(), n.map, b_) : n.m.h2_estimate();
        } else {
            n.h1 = n.m.h1();
            n.h2 = n.m.all_crossed() ? exact_h2(n.m) : n.m.h2_estimate();
        }
    }

    bool is_goal(const Node& n) const { return n.m.phase_empty() && n.m.all_crossed(); }

    void finish(Node n) {
        auto ops = n.m.gaussian_finish();
        for (auto [a, b] : ops) {
            int qc = b_.lines[a], qt = b_.lines[b];
            route_pair(n, qc, qt);
            emit_cnot(n, qc, qt);
            n.m.apply_cnot_inplace(n.m.active_row(a), n.m.active_row(b));
            n.g += 1;
        }
        for (int i = 0; i < static_cast<int>(b_.lines.size()); ++i) {
            if (b_.final_affine.test(i)) {
                Gate xg = Gate::x(b_.lines[i]);
                n.gates.push_back(xg);
                emit_phys_1q(n, xg);
            }
        }
        Solution s;
        s.gates = std::move(n.gates);
        s.phys = std::move(n.phys);
        s.map = n.map;
        s.cnots = n.g;
        s.swaps = n.swaps;
        s.total = hw() ? static_cast<int>(s.phys.size()) : static_cast<int>(s.gates.size());
        s.order = seq_++;
        solutions_.push_back(std::move(s));
        ++stats_.solutions_found;
    }

    // Lower bound on CNOTs still needed: one row op changes any column's
    // weight by at most one.
    int remaining_lb(const JointParityMatrix& m) const {
        int maxw = 0;
        m.live_mask().for_each_set([&](std::size_t col) {
            maxw = std::max(maxw, m.col_weight(static_cast<int>(col)));
        });
        return std::max(0, maxw - 1);
    }

    bool bounded_out(const Node& n) const {
        return cfg_.cnot_upper_bound >= 0 &&
               n.g + remaining_lb(n.m) >= cfg_.cnot_upper_bound;
    }

    void push(Node&& n) {
        std::size_t key = n.m.state_hash() ^ (n.active.hash() * 0x9e3779b9u);
        if (hw()) key ^= n.map.hash();
        auto it = visited_.find(key);
        if (it != visited_.end() && it->second <= n.g) return;
        visited_[key] = n.g;
        n.seq = seq_++;
        queue_.insert(std::move(n));
        if (static_cast<int>(queue_.size()) > cfg_.queue_capacity) {
            int target = cfg_.queue_capacity - cfg_.queue_capacity / 10;
            while (static_cast<int>(queue_.size()) > target) {
                queue_.erase(std::prev(queue_.end()));
                ++stats_.nodes_dropped;
            }
        }
    }

    // Whether the row op (ra ^= rb) makes the next barrier event easier:
    // either a checkpoint column gets closer to its unit form, or a dying
    // row sheds pending dependence.
    bool helps_crossing(const Node& n, int ra, int rb) const {
        auto cols = n.m.next_event_checkpoint_cols();
        if (cols.empty()) return false;
        for (int col : cols) {
            int dying = n.m.checkpoint_dying_row(col);
            bool bit_a = n.m.row(ra).test(col), bit_b = n.m.row(rb).test(col);
            int w = n.m.col_weight(col);
            int w_after = w + ((bit_b && !bit_a) ? 1 : 0) - ((bit_b && bit_a) ? 1 : 0);
            bool at_after = ra == dying ? (bit_a ^ bit_b) : n.m.row(dying).test(col);
            int cost = w - 1 + (n.m.row(dying).test(col) ? 0 : 1);
            int cost_after = w_after - 1 + (at_after ? 0 : 1);
            if (cost_after < cost) return true;
        }
        for (int col : cols) {
            int dying = n.m.checkpoint_dying_row(col);
            if (dying != ra) continue;
            int before = n.m.row(ra).popcount_and(n.m.live_mask());
            BitVec merged = n.m.row(ra);
            merged ^= n.m.row(rb);
            int after = merged.popcount_and(n.m.live_mask());
            if (after < before) return true;
        }
        return false;
    }

    void make_child(const Node& parent, int lineA, int lineB, const BitVec& dist_improved,
                    std::vector<Node>& out) {
        int ra = parent.m.active_row(lineA), rb = parent.m.active_row(lineB);
        Node child = parent;
        BitVec reduced = parent.m.row(ra);
        // columns losing a bit: both rows set, inside the active set
        // (computed before the xor)
        BitVec rbv = parent.m.row(rb);
        child.m.apply_cnot_inplace(ra, rb);
        child.g += 1;
        emit_cnot(child, b_.lines[lineA], b_.lines[lineB]);

        bool completed = false, crossed = false;
        normalize(child, completed, crossed);

        if (completed || crossed) {
            child.active = child.m.live_phase_mask();
        } else {
            BitVec next(child.active.size());
            parent.active.for_each_set([&](std::size_t c) {
                if (reduced.test(c) && rbv.test(c) && child.m.live_phase_mask().test(c))
                    next.set(c);
            });
            dist_improved.for_each_set([&](std::size_t c) {
                if (child.m.live_phase_mask().test(c)) next.set(c);
            });
            if (!next.any()) next = child.m.live_phase_mask();
            child.active = next;
        }
        score(child);
        out.push_back(std::move(child));
    }

    void expand(const Node& n, std::vector<Node>& out) {
        const int L = n.m.line_count();
        const BitVec empty_mask(n.active.size());
        bool any_case_a = false;

        struct CaseB {
            int lineA, lineB;
            double improvement;
            BitVec improved;
        };
        std::vector<CaseB> case_b;

        // per-column pair-distance sums for the parent (hardware mode)
        std::vector<double> parent_S;
        if (hw()) {
            parent_S.assign(n.active.size(), 0);
            n.active.for_each_set([&](std::size_t col) {
                parent_S[col] = col_pair_dist_sum(
                    graph(), col_active_phys(n.m, static_cast<int>(col), n.map, b_));
            });
        }

        for (int a = 0; a < L; ++a) {
            for (int bline = 0; bline < L; ++bline) {
                if (a == bline) continue;
                int ra = n.m.active_row(a), rb = n.m.active_row(bline);
                bool reduces = BitVec::and3_any(n.m.row(ra), n.m.row(rb), n.active);
                bool adjacent =
                    !hw() || graph().adjacent(n.map.phys(b_.lines[a]), n.map.phys(b_.lines[bline]));
                if (!adjacent) continue;

                if (reduces) {
                    any_case_a = true;
                    make_child(n, a, bline, empty_mask, out);
                    continue;
                }
                if (helps_crossing(n, ra, rb)) {
                    make_child(n, a, bline, empty_mask, out);
                    continue;
                }
                if (hw()) {
                    // case B: same connectivity move judged by distances
                    JointParityMatrix sim = n.m;
                    sim.apply_cnot_inplace(ra, rb);
                    double improvement = 0;
                    BitVec improved(n.active.size());
                    n.active.for_each_set([&](std::size_t col) {
                        if (!n.m.row(rb).test(col) && !n.m.row(ra).test(col)) return;
                        double after = col_pair_dist_sum(
                            graph(), col_active_phys(sim, static_cast<int>(col), n.map, b_));
                        if (after < parent_S[col]) {
                            improvement += parent_S[col] - after;
                            improved.set(col);
                        }
                    });
                    if (improved.any()) case_b.push_back({a, bline, improvement, improved});
                }
            }
        }

        if (hw() && !case_b.empty()) {
            std::stable_sort(case_b.begin(), case_b.end(),
                             [](const CaseB& x, const CaseB& y) {
                                 return x.improvement > y.improvement;
                             });
            if (case_b.size() > 4) case_b.resize(4);  // cap case-B branching
            for (auto& cb : case_b) make_child(n, cb.lineA, cb.lineB, cb.improved, out);
        }

        if (hw() && hw_->allow_swaps && !any_case_a) {
            // case C: swaps that bring some active column's closest pair closer
            std::vector<double> parent_min(n.active.size(), 0);
            n.active.for_each_set([&](std::size_t col) {
                parent_min[col] = col_min_pair_dist(
                    graph(), col_active_phys(n.m, static_cast<int>(col), n.map, b_));
            });
            for (auto [p1, p2] : graph().edges()) {
                Mapping swapped = n.map;
                swapped.swap_physical(p1, p2);
                bool better = false;
                n.active.for_each_set([&](std::size_t col) {
                    if (better) return;
                    double after = col_min_pair_dist(
                        graph(), col_active_phys(n.m, static_cast<int>(col), swapped, b_));
                    if (after < parent_min[col]) better = true;
                });
                if (!better) continue;
                Node child = n;
                child.map = swapped;
                child.g += 3;
                child.swaps += 1;
                child.phys.push_back(Gate::swap(p1, p2));
                bool completed = false, crossed = false;
                normalize(child, completed, crossed);  // mapping change frees nothing
                if (completed || crossed) child.active = child.m.live_phase_mask();
                score(child);
                out.push_back(std::move(child));
            }
        }
    }

    BlockResult fallback(Mapping final_map) {
        std::vector<Gate> gates = rotation_merged_replay(b_);
        BlockResult r;
        r.stats = stats_;
        r.stats.used_fallback = true;
        if (hw()) {
            Mapping map = *map0_;
            std::vector<Gate> phys;
            for (const Gate& g : gates) {
                if (g.kind == Gate::Kind::Cnot || g.kind == Gate::Kind::Swap) {
                    route_to_adjacent(graph(), map, g.q0, g.q1, [&](int p1, int p2) {
                        phys.push_back(Gate::swap(p1, p2));
                        ++r.swaps;
                    });
                    Gate pg = g;
                    pg.q0 = map.phys(g.q0);
                    pg.q1 = map.phys(g.q1);
                    phys.push_back(pg);
                } else {
                    Gate pg = g;
                    pg.q0 = map.phys(g.q0);
                    phys.push_back(pg);
                }
            }
            r.physical_gates = std::move(phys);
            final_map = map;
        }
        auto replayed = validate_region(b_, gates);
        if (!replayed) throw std::logic_error("fallback replay failed validation");
        r.phase_delta = b_.global_phase + -(*replayed);
        r.gates = std::move(gates);
        r.cnots = 0;
        for (const Gate& g : r.gates)
            if (g.kind == Gate::Kind::Cnot) ++r.cnots;
        r.cnots += 3 * r.swaps;
        result_map_ = final_map;
        return r;
    }

public:
    Mapping result_map_;
};

BlockResult Search::run() {
    auto start = Clock::now();
    deadline_ = start + std::chrono::duration_cast<Clock::duration>(
                            std::chrono::duration<double>(cfg_.per_block_timeout_s));

    Node root;
    root.m = JointParityMatrix::from_block(b_);
    if (hw()) root.map = *map0_;
    bool c0 = false, x0 = false;
    normalize(root, c0, x0);
    root.active = root.m.live_phase_mask();
    score(root);

    if (is_goal(root)) {
        finish(root);
    } else {
        Node r = root;
        push(std::move(r));
    }

    while (!queue_.empty() && static_cast<long>(solutions_.size()) < cfg_.solution_count) {
        if (Clock::now() > deadline_) {
            stats_.timed_out = true;
            break;
        }
        Node cur = std::move(queue_.extract(queue_.begin()).value());
        ++stats_.nodes_expanded;
        std::vector<Node> children;
        expand(cur, children);
        for (Node& ch : children) {
            if (bounded_out(ch)) continue;
            if (is_goal(ch))
                finish(std::move(ch));
            else
                push(std::move(ch));
        }
    }

    stats_.wall_time_s = std::chrono::duration<double>(Clock::now() - start).count();

    const Solution* best = nullptr;
    for (const auto& s : solutions_) {
        if (!best || s.cnots < best->cnots ||
            (s.cnots == best->cnots && s.total < best->total) ||
            (s.cnots == best->cnots && s.total == best->total && s.order < best->order))
            best = &s;
    }

    Mapping fmap = hw() ? *map0_ : Mapping();
    BlockResult fb = fallback(fmap);
    if (!best) return fb;

    int best_total = hw() ? best->total : static_cast<int>(best->gates.size());
    int fb_total = hw() ? static_cast<int>(fb.physical_gates.size())
                        : static_cast<int>(fb.gates.size());
    bool take_engine = std::pair(best_total, best->cnots) <= std::pair(fb_total, fb.cnots);
    if (!take_engine) return fb;

    auto replayed = validate_region(b_, best->gates);
    if (!replayed) throw std::logic_error("engine result failed canonical-form validation");
    BlockResult r;
    r.gates = best->gates;
    r.physical_gates = best->phys;
    r.phase_delta = b_.global_phase + -(*replayed);
    r.cnots = best->cnots;
    r.swaps = best->swaps;
    r.stats = stats_;
    result_map_ = best->map;
    if (cfg_.verbose)
        std::cerr << "block(" << b_.lines.size() << "q," << b_.terms.size()
                  << "t): expanded=" << stats_.nodes_expanded
                  << " dropped=" << stats_.nodes_dropped
                  << " solutions=" << stats_.solutions_found << " cnots=" << r.cnots
                  << " time=" << stats_.wall_time_s << "s\n";
    return r;
}

}  // namespace

int weighted_dist(const CouplingGraph& g, const std::vector<bool>& active, int a, int b) {
    if (a == b) return 0;
    const int n = g.node_count();
    std::vector<int> dist(n, std::numeric_limits<int>::max());
    using Item = std::pair<int, int>;  // (cost, node)
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    dist[a] = 0;
    pq.emplace(0, a);
    while (!pq.empty()) {
        auto [d, u] = pq.top();
        pq.pop();
        if (d > dist[u]) continue;
        if (u == b) return d;
        for (int v : g.neighbors(u)) {
            int w = active[v] ? 1 : 3;
            if (d + w < dist[v]) {
                dist[v] = d + w;
                pq.emplace(dist[v], v);
            }
        }
    }
    throw Disconnected();
}

double hw_h1(const JointParityMatrix& m, const CouplingGraph& g, const Mapping& map,
             const PhaseBlock& b) {
    double total = 0;
    m.live_phase_mask().for_each_set([&](std::size_t col) {
        auto qa = col_active_phys(m, static_cast<int>(col), map, b);
        if (qa.size() <= 1) return;
        total += col_pair_dist_sum(g, qa) / static_cast<double>(qa.size() - 1);
    });
    return total;
}

double hw_h2(const JointParityMatrix& m, const CouplingGraph& g, const Mapping& map,
             const PhaseBlock& b) {
    auto act = phys_active_all(g, map, b);
    double total = 0;
    for (auto [a, t] : m.gaussian_finish())
        total += weighted_dist(g, act, map.phys(b.lines[a]), map.phys(b.lines[t]));
    return total;
}

BlockResult synthesize_block(const PhaseBlock& b, const EngineConfig& cfg) {
    Search s(b, cfg, nullptr, nullptr);
    return s.run();
}

BlockResult synthesize_block_hw(const PhaseBlock& b, const EngineConfig& cfg,
                                const HwContext& hw, Mapping& mapping) {
    Search s(b, cfg, &hw, &mapping);
    BlockResult r = s.run();
    mapping = s.result_map_;
    return r;
}

}  // namespace ppopt

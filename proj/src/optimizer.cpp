#include "ppopt/optimizer.hpp"

#include <algorithm>
#include <numeric>

namespace ppopt {

namespace {

int count_cnots(const std::vector<Gate>& gates) {
    int n = 0;
    for (const Gate& g : gates)
        if (g.kind == Gate::Kind::Cnot) ++n;
    return n;
}

BlockLog log_of(const PhaseBlock& b, const BlockResult& r) {
    BlockLog log;
    log.lines = static_cast<int>(b.lines.size());
    log.terms = static_cast<int>(b.terms.size());
    log.block_count = b.block_count;
    log.cnots = r.cnots;
    log.stats = r.stats;
    return log;
}

// Group-1 solution of a merged region's constituents, used both as the
// progressive pruning bound and as the guaranteed baseline.
BlockResult constituent_baseline(const PhaseBlock& region, const OptimizeOptions& opt) {
    Circuit sub;
    sub.qubit_count = region.circuit_qubits;
    sub.gates = region.original_gates;
    BlockResult base;
    for (const Segment& seg : partition(sub)) {
        if (std::holds_alternative<Gate>(seg)) {
            base.gates.push_back(std::get<Gate>(seg));
            continue;
        }
        BlockResult r = synthesize_block(std::get<PhaseBlock>(seg), opt.engine);
        base.gates.insert(base.gates.end(), r.gates.begin(), r.gates.end());
        base.stats.nodes_expanded += r.stats.nodes_expanded;
        base.stats.timed_out |= r.stats.timed_out;
        base.stats.used_fallback |= r.stats.used_fallback;
    }
    auto replayed = validate_region(region, base.gates);
    if (!replayed) throw std::logic_error("constituent baseline failed validation");
    base.phase_delta = region.global_phase + -(*replayed);
    base.cnots = count_cnots(base.gates);
    return base;
}

BlockResult solve_region(const PhaseBlock& region, const OptimizeOptions& opt) {
    if (region.block_count <= 1) return synthesize_block(region, opt.engine);

    BlockResult base = constituent_baseline(region, opt);
    EngineConfig cfg = opt.engine;
    cfg.cnot_upper_bound = base.cnots;
    BlockResult merged = synthesize_block(region, cfg);

    auto key = [](const BlockResult& r) {
        return std::pair(static_cast<int>(r.gates.size()), r.cnots);
    };
    return key(merged) <= key(base) ? merged : base;
}

}  // namespace

OptimizeResult optimize_circuit(const Circuit& c, const OptimizeOptions& opt) {
    std::vector<Segment> segs = partition(c);
    if (opt.group_size > 1) segs = merge_blocks(segs, opt.group_size);

    OptimizeResult res;
    res.circuit.qubit_count = c.qubit_count;
    res.circuit.name = c.name;
    for (const Segment& seg : segs) {
        if (std::holds_alternative<Gate>(seg)) {
            res.circuit.gates.push_back(std::get<Gate>(seg));
            continue;
        }
        const PhaseBlock& b = std::get<PhaseBlock>(seg);
        BlockResult r = solve_region(b, opt);
        res.circuit.gates.insert(res.circuit.gates.end(), r.gates.begin(), r.gates.end());
        res.global_phase += r.phase_delta;
        res.any_timeout |= r.stats.timed_out;
        res.any_fallback |= r.stats.used_fallback;
        res.blocks.push_back(log_of(b, r));
    }
    return res;
}

namespace {

struct HwPass {
    Circuit physical;
    Mapping final_map;
    Angle phase;
    bool timeout = false, fallback = false;
    std::vector<BlockLog> blocks;
};

BlockResult solve_region_hw(const PhaseBlock& region, const OptimizeOptions& opt,
                            const HwContext& hw, Mapping& mapping) {
    if (region.block_count <= 1) return synthesize_block_hw(region, opt.engine, hw, mapping);

    // Baseline: constituents solved one by one under the same mapping flow.
    Mapping base_map = mapping;
    Circuit sub;
    sub.qubit_count = region.circuit_qubits;
    sub.gates = region.original_gates;
    BlockResult base;
    for (const Segment& seg : partition(sub)) {
        if (std::holds_alternative<Gate>(seg)) {
            const Gate& g = std::get<Gate>(seg);
            base.gates.push_back(g);
            if (g.is_two_qubit()) {
                route_to_adjacent(*hw.graph, base_map, g.q0, g.q1, [&](int p1, int p2) {
                    base.physical_gates.push_back(Gate::swap(p1, p2));
                    ++base.swaps;
                });
                Gate pg = g;
                pg.q0 = base_map.phys(g.q0);
                pg.q1 = base_map.phys(g.q1);
                base.physical_gates.push_back(pg);
            } else {
                Gate pg = g;
                pg.q0 = base_map.phys(g.q0);
                base.physical_gates.push_back(pg);
            }
            continue;
        }
        BlockResult r = synthesize_block_hw(std::get<PhaseBlock>(seg), opt.engine, hw, base_map);
        base.gates.insert(base.gates.end(), r.gates.begin(), r.gates.end());
        base.physical_gates.insert(base.physical_gates.end(), r.physical_gates.begin(),
                                   r.physical_gates.end());
        base.swaps += r.swaps;
        base.stats.timed_out |= r.stats.timed_out;
        base.stats.used_fallback |= r.stats.used_fallback;
    }
    auto replayed = validate_region(region, base.gates);
    if (!replayed) throw std::logic_error("hw baseline failed validation");
    base.phase_delta = region.global_phase + -(*replayed);
    base.cnots = count_cnots(base.gates) + 3 * base.swaps;

    EngineConfig cfg = opt.engine;
    cfg.cnot_upper_bound = base.cnots;
    Mapping merged_map = mapping;
    BlockResult merged = synthesize_block_hw(region, cfg, hw, merged_map);

    auto key = [](const BlockResult& r) {
        return std::pair(r.cnots, static_cast<int>(r.physical_gates.size()));
    };
    if (key(merged) <= key(base)) {
        mapping = merged_map;
        return merged;
    }
    mapping = base_map;
    return base;
}

HwPass run_hw_pass(const Circuit& c, const CouplingGraph& g, Mapping m0,
                   const OptimizeOptions& opt) {
    HwContext hw{&g, opt.allow_swaps};
    std::vector<Segment> segs = partition(c);
    if (opt.group_size > 1) segs = merge_blocks(segs, opt.group_size);

    HwPass pass;
    pass.physical.qubit_count = g.node_count();
    pass.physical.name = c.name;
    Mapping map = std::move(m0);

    for (const Segment& seg : segs) {
        if (std::holds_alternative<Gate>(seg)) {
            const Gate& gate = std::get<Gate>(seg);
            if (gate.is_two_qubit()) {
                route_to_adjacent(g, map, gate.q0, gate.q1, [&](int p1, int p2) {
                    pass.physical.gates.push_back(Gate::swap(p1, p2));
                });
                Gate pg = gate;
                pg.q0 = map.phys(gate.q0);
                pg.q1 = map.phys(gate.q1);
                pass.physical.gates.push_back(pg);
            } else {
                Gate pg = gate;
                pg.q0 = map.phys(gate.q0);
                pass.physical.gates.push_back(pg);
            }
            continue;
        }
        const PhaseBlock& b = std::get<PhaseBlock>(seg);
        BlockResult r = solve_region_hw(b, opt, hw, map);
        pass.physical.gates.insert(pass.physical.gates.end(), r.physical_gates.begin(),
                                   r.physical_gates.end());
        pass.phase += r.phase_delta;
        pass.timeout |= r.stats.timed_out;
        pass.fallback |= r.stats.used_fallback;
        pass.blocks.push_back(log_of(b, r));
    }
    pass.final_map = map;
    return pass;
}

}  // namespace

OptimizeResult hw_optimize(const Circuit& c, const CouplingGraph& g,
                           const OptimizeOptions& opt) {
    if (c.qubit_count > g.node_count()) throw TooManyQubits(c.qubit_count, g.node_count());
    Circuit padded = c;
    padded.qubit_count = g.node_count();

    Mapping m = Mapping::identity(g.node_count());
    Circuit reversed = padded.reversed();
    for (int round = 0; round < opt.hw_rounds; ++round) {
        HwPass fwd = run_hw_pass(padded, g, m, opt);
        HwPass bwd = run_hw_pass(reversed, g, fwd.final_map, opt);
        m = bwd.final_map;
    }
    HwPass last = run_hw_pass(padded, g, m, opt);

    OptimizeResult res;
    res.circuit = std::move(last.physical);
    res.global_phase = last.phase;
    res.any_timeout = last.timeout;
    res.any_fallback = last.fallback;
    res.blocks = std::move(last.blocks);
    res.initial_mapping = m;
    res.final_mapping = last.final_map;
    return res;
}

Circuit linear_template(const Circuit& c, const std::vector<int>& placement,
                        const EngineConfig& cfg) {
    CouplingGraph line = CouplingGraph::line(c.qubit_count);
    OptimizeOptions opt;
    opt.engine = cfg;
    opt.allow_swaps = false;
    opt.hw_rounds = 0;

    if (static_cast<int>(placement.size()) != c.qubit_count)
        throw std::invalid_argument("placement size must match qubit count");
    Mapping m = Mapping::identity(c.qubit_count);
    // place qubit q at line position placement[q]
    for (int q = 0; q < c.qubit_count; ++q) {
        int want = placement[q];
        if (m.phys(q) != want) m.swap_physical(m.phys(q), want);
    }

    HwPass pass = run_hw_pass(c, line, m, opt);
    if (pass.physical.swap_count() > 0)
        throw std::runtime_error("no swap-free template found for this placement");
    if (!(pass.final_map == m))
        throw std::runtime_error("template search moved qubits");
    return pass.physical;
}

bool connectivity_audit(const Circuit& physical, const CouplingGraph& g) {
    for (const Gate& gate : physical.gates)
        if (gate.is_two_qubit() && !g.adjacent(gate.q0, gate.q1)) return false;
    return true;
}

}  // namespace ppopt

#include "ppopt/bench_circuits.hpp"

#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace ppopt::bench {

namespace {

struct RawGate {
    std::string name;        // h, t, tdg, x, cx
    std::vector<int> qubits;
};

using RawList = std::vector<RawGate>;

// flip swaps t and tdg: the mirrored decomposition of the same gate.
// Compute/uncompute pairs are emitted with opposite handedness, which is
// what lets downstream rotation merging cancel their phase gates.
void ccz(RawList& out, int a, int b, int c, bool flip = false) {
    const char* T = flip ? "tdg" : "t";
    const char* D = flip ? "t" : "tdg";
    out.insert(out.end(), {
        {"cx", {b, c}}, {D, {c}},
        {"cx", {a, c}}, {T, {c}},
        {"cx", {b, c}}, {D, {c}},
        {"cx", {a, c}}, {T, {b}}, {T, {c}},
        {"cx", {a, b}}, {D, {b}},
        {"cx", {a, b}}, {T, {a}},
    });
}

void ccx(RawList& out, int a, int b, int c, bool flip = false) {
    out.push_back({"h", {c}});
    RawList inner;
    ccz(inner, a, b, c, flip);
    // the target section sits inside the H pair, the control tail after
    out.insert(out.end(), inner.begin(), inner.begin() + 9);
    out.push_back({"h", {c}});
    out.insert(out.end(), inner.begin() + 9, inner.end());
}

void cx(RawList& out, int a, int b) { out.push_back({"cx", {a, b}}); }
void x(RawList& out, int q) { out.push_back({"x", {q}}); }

bool touches(const RawGate& g, int q) {
    for (int v : g.qubits)
        if (v == q) return true;
    return false;
}

bool cancels(const RawGate& a, const RawGate& b) {
    if (a.qubits != b.qubits) return false;
    if (a.name == "h" && b.name == "h") return true;
    if (a.name == "x" && b.name == "x") return true;
    if (a.name == "cx" && b.name == "cx") return true;
    if ((a.name == "t" && b.name == "tdg") || (a.name == "tdg" && b.name == "t")) return true;
    return false;
}

// Removes pairs of mutually inverse gates that are adjacent on their
// wires, iterating to a fixpoint.  Only the nearest later gate sharing a
// wire is considered, so nothing is commuted.
void peephole(RawList& gates) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < gates.size() && !changed; ++i) {
            for (std::size_t j = i + 1; j < gates.size(); ++j) {
                bool shares = false;
                for (int q : gates[i].qubits)
                    if (touches(gates[j], q)) shares = true;
                if (!shares) continue;
                if (cancels(gates[i], gates[j])) {
                    gates.erase(gates.begin() + j);
                    gates.erase(gates.begin() + i);
                    changed = true;
                }
                break;
            }
        }
    }
}

std::string render(const RawList& gates, int qubits) {
    std::string out = "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[" +
                      std::to_string(qubits) + "];\n";
    for (const RawGate& g : gates) {
        out += g.name + " ";
        for (std::size_t i = 0; i < g.qubits.size(); ++i) {
            if (i) out += ",";
            out += "q[" + std::to_string(g.qubits[i]) + "]";
        }
        out += ";\n";
    }
    return out;
}

}  // namespace

std::string tof(int n) {
    if (n < 3) throw std::invalid_argument("tof wants >= 3 controls");
    // qubits: controls 0..n-1, ancillas n..2n-4, target 2n-2... ancilla i at n+i
    const int anc = n, target = 2 * n - 2;
    RawList g;
    ccx(g, 0, 1, anc);
    for (int i = 1; i <= n - 3; ++i) ccx(g, i + 1, anc + i - 1, anc + i);
    ccx(g, n - 1, anc + n - 3, target);
    for (int i = n - 3; i >= 1; --i) ccx(g, i + 1, anc + i - 1, anc + i, true);
    ccx(g, 0, 1, anc, true);
    peephole(g);
    return render(g, 2 * n - 1);
}

std::string barenco_tof(int n) {
    if (n < 3) throw std::invalid_argument("barenco_tof wants >= 3 controls");
    const int anc = n, target = 2 * n - 2;
    RawList g;
    for (int rep = 0; rep < 2; ++rep) {
        bool flip = rep == 1;
        ccx(g, n - 1, anc + n - 3, target, flip);
        for (int i = n - 3; i >= 1; --i) ccx(g, i + 1, anc + i - 1, anc + i, flip);
        ccx(g, 0, 1, anc, flip);
        for (int i = 1; i <= n - 3; ++i) ccx(g, i + 1, anc + i - 1, anc + i, flip);
    }
    peephole(g);
    return render(g, 2 * n - 1);
}

std::string vbe_adder(int n) {
    // layout: carries c_i at 3i, a_i at 3i+1, b_i at 3i+2, top carry last
    const int z = 3 * n;
    auto c = [](int i) { return 3 * i; };
    auto a = [](int i) { return 3 * i + 1; };
    auto b = [](int i) { return 3 * i + 2; };
    RawList g;
    auto carry = [&](int ci, int ai, int bi, int co) {
        ccx(g, ai, bi, co);
        cx(g, ai, bi);
        ccx(g, ci, bi, co);
    };
    auto carry_dg = [&](int ci, int ai, int bi, int co) {
        ccx(g, ci, bi, co, true);
        cx(g, ai, bi);
        ccx(g, ai, bi, co, true);
    };
    auto sum = [&](int ci, int ai, int bi) {
        cx(g, ai, bi);
        cx(g, ci, bi);
    };
    for (int i = 0; i < n; ++i) carry(c(i), a(i), b(i), i == n - 1 ? z : c(i + 1));
    cx(g, a(n - 1), b(n - 1));
    sum(c(n - 1), a(n - 1), b(n - 1));
    for (int i = n - 2; i >= 0; --i) {
        carry_dg(c(i), a(i), b(i), c(i + 1));
        sum(c(i), a(i), b(i));
    }
    peephole(g);
    return render(g, 3 * n + 1);
}

std::string mod5_4() {
    RawList g;
    x(g, 4);
    g.push_back({"h", {4}});
    ccz(g, 0, 1, 4);
    cx(g, 0, 4);
    ccx(g, 1, 2, 4);
    cx(g, 1, 4);
    ccz(g, 2, 3, 4, true);
    cx(g, 2, 4);
    ccx(g, 0, 3, 4, true);
    cx(g, 3, 4);
    g.push_back({"h", {4}});
    peephole(g);
    return render(g, 5);
}

std::vector<NamedCircuit> small_suite() {
    return {
        {"tof_3", tof(3)},
        {"barenco_tof_3", barenco_tof(3)},
        {"mod5_4", mod5_4()},
        {"tof_4", tof(4)},
        {"tof_5", tof(5)},
        {"barenco_tof_4", barenco_tof(4)},
        {"vbe_adder_3", vbe_adder(3)},
    };
}

void write_suite(const std::string& dir) {
    std::filesystem::create_directories(dir);
    for (const auto& [name, qasm] : small_suite()) {
        std::ofstream out(dir + "/" + name + ".qasm");
        if (!out) throw std::runtime_error("cannot write " + dir + "/" + name + ".qasm");
        out << qasm;
    }
}

}  // namespace ppopt::bench

#include "ppopt/canonical.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace ppopt {

bool CanonicalForm::operator==(const CanonicalForm& o) const {
    return global_phase == o.global_phase && equivalent_up_to_phase(o);
}

bool CanonicalForm::equivalent_up_to_phase(const CanonicalForm& o) const {
    if (terms.size() != o.terms.size()) return false;
    for (std::size_t i = 0; i < terms.size(); ++i)
        if (terms[i].first != o.terms[i].first || terms[i].second != o.terms[i].second)
            return false;
    return output_rows == o.output_rows && affine == o.affine;
}

PhaseTracker::PhaseTracker(int wires, int vars)
    : rows_(wires, BitVec(vars)), affine_(wires) {}

void PhaseTracker::bind(int w, int v) {
    rows_[w] = BitVec(rows_[w].size());
    rows_[w].set(v);
    if (affine_.test(w)) affine_.flip(w);
}

void PhaseTracker::rebind(int w, int v) { bind(w, v); }

void PhaseTracker::apply_cnot(int control, int target) {
    rows_[target] ^= rows_[control];
    if (affine_.test(control)) affine_.flip(target);
}

void PhaseTracker::apply_x(int w) { affine_.flip(w); }

void PhaseTracker::apply_rz(int w, const Angle& a) {
    if (affine_.test(w)) {
        // wire holds p(x) xor 1: theta*(1-p) = theta - theta*p
        raw_terms_.emplace_back(rows_[w], -a);
        phase_ += a;
    } else {
        raw_terms_.emplace_back(rows_[w], a);
    }
}

void PhaseTracker::apply(const Gate& g) {
    switch (g.kind) {
        case Gate::Kind::Cnot: apply_cnot(g.q0, g.q1); return;
        case Gate::Kind::Rz: apply_rz(g.q0, g.angle); return;
        case Gate::Kind::X: apply_x(g.q0); return;
        default: throw NonPhasePolyGate("gate is not CNOT/Rz/X");
    }
}

std::vector<std::pair<BitVec, Angle>> PhaseTracker::merged_terms() const {
    std::map<BitVec, Angle> merged;
    for (const auto& [p, a] : raw_terms_) {
        auto [it, fresh] = merged.emplace(p, a);
        if (!fresh) it->second += a;
    }
    std::vector<std::pair<BitVec, Angle>> out;
    for (auto& [p, a] : merged)
        if (!a.is_zero() && p.any()) out.emplace_back(p, a);
    return out;
}

CanonicalForm PhaseTracker::form() const {
    CanonicalForm f;
    f.terms = merged_terms();
    f.output_rows = rows_;
    f.affine = affine_;
    f.global_phase = phase_;
    return f;
}

CanonicalForm canonical_form(const Circuit& c) {
    PhaseTracker t(c.qubit_count, c.qubit_count);
    for (int i = 0; i < c.qubit_count; ++i) t.bind(i, i);
    for (const Gate& g : c.gates) t.apply(g);
    return t.form();
}

}  // namespace ppopt

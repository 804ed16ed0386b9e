#include "ppopt/simulator.hpp"

#include <cmath>

namespace ppopt {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

void apply_gate(std::vector<std::complex<double>>& v, const Gate& g, int n) {
    const std::size_t dim = std::size_t(1) << n;
    switch (g.kind) {
        case Gate::Kind::Cnot: {
            const std::size_t c = std::size_t(1) << g.q0, t = std::size_t(1) << g.q1;
            for (std::size_t i = 0; i < dim; ++i)
                if ((i & c) && !(i & t)) std::swap(v[i], v[i | t]);
            break;
        }
        case Gate::Kind::X: {
            const std::size_t q = std::size_t(1) << g.q0;
            for (std::size_t i = 0; i < dim; ++i)
                if (!(i & q)) std::swap(v[i], v[i | q]);
            break;
        }
        case Gate::Kind::Swap: {
            const std::size_t a = std::size_t(1) << g.q0, b = std::size_t(1) << g.q1;
            for (std::size_t i = 0; i < dim; ++i)
                if ((i & a) && !(i & b)) std::swap(v[i], v[(i ^ a) | b]);
            break;
        }
        case Gate::Kind::Rz: {
            // Rz(theta)|x> = e^{i theta x}|x>
            const std::size_t q = std::size_t(1) << g.q0;
            const std::complex<double> ph = std::polar(1.0, g.angle.radians());
            for (std::size_t i = 0; i < dim; ++i)
                if (i & q) v[i] *= ph;
            break;
        }
        case Gate::Kind::H: {
            const std::size_t q = std::size_t(1) << g.q0;
            for (std::size_t i = 0; i < dim; ++i)
                if (!(i & q)) {
                    auto v0 = v[i], v1 = v[i | q];
                    v[i] = (v0 + v1) * kInvSqrt2;
                    v[i | q] = (v0 - v1) * kInvSqrt2;
                }
            break;
        }
        case Gate::Kind::Other1Q:
            throw std::runtime_error("cannot simulate opaque gate " + g.name);
    }
}

}  // namespace

Unitary circuit_unitary(const Circuit& c) {
    if (c.qubit_count > 10) throw TooLarge(c.qubit_count);
    const std::size_t dim = std::size_t(1) << c.qubit_count;
    Unitary u(dim);
    for (std::size_t col = 0; col < dim; ++col) {
        u[col].assign(dim, {0, 0});
        u[col][col] = 1;
        for (const Gate& g : c.gates) apply_gate(u[col], g, c.qubit_count);
    }
    return u;
}

bool unitaries_equal_up_to_phase(const Unitary& a, const Unitary& b, double tol) {
    if (a.size() != b.size()) return false;
    const std::size_t dim = a.size();
    double best = -1;
    std::size_t bc = 0, br = 0;
    for (std::size_t c = 0; c < dim; ++c)
        for (std::size_t r = 0; r < dim; ++r) {
            double m = std::abs(a[c][r]);
            if (m > best) { best = m; bc = c; br = r; }
        }
    if (best <= 0) return false;
    if (std::abs(b[bc][br]) < tol) return false;
    std::complex<double> phase = b[bc][br] / a[bc][br];
    phase /= std::abs(phase);
    for (std::size_t c = 0; c < dim; ++c)
        for (std::size_t r = 0; r < dim; ++r)
            if (std::abs(b[c][r] - phase * a[c][r]) >= tol) return false;
    return true;
}

bool unitary_equal(const Circuit& a, const Circuit& b, double tol) {
    if (a.qubit_count != b.qubit_count) return false;
    return unitaries_equal_up_to_phase(circuit_unitary(a), circuit_unitary(b), tol);
}

bool unitary_equal_mapped(const Circuit& logical, const Circuit& physical, const Mapping& init,
                          const Mapping& fin, double tol) {
    if (logical.qubit_count != physical.qubit_count) return false;
    const int n = logical.qubit_count;
    if (n > 10) throw TooLarge(n);
    const std::size_t dim = std::size_t(1) << n;

    Unitary ua = circuit_unitary(logical);
    Unitary ub = circuit_unitary(physical);

    auto gather = [&](std::size_t y, const Mapping& m) {  // x_l = y_{m(l)}
        std::size_t x = 0;
        for (int l = 0; l < n; ++l)
            if (y & (std::size_t(1) << m.phys(l))) x |= std::size_t(1) << l;
        return x;
    };
    auto scatter = [&](std::size_t z, const Mapping& m) {  // w_{m(l)} = z_l
        std::size_t w = 0;
        for (int l = 0; l < n; ++l)
            if (z & (std::size_t(1) << l)) w |= std::size_t(1) << m.phys(l);
        return w;
    };

    Unitary expected(dim);
    for (std::size_t y = 0; y < dim; ++y) {
        const auto& col = ua[gather(y, init)];
        expected[y].assign(dim, {0, 0});
        for (std::size_t z = 0; z < dim; ++z) expected[y][scatter(z, fin)] = col[z];
    }
    return unitaries_equal_up_to_phase(expected, ub, tol);
}

}  // namespace ppopt

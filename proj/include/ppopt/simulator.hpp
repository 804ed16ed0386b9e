#pragma once

#include <complex>
#include <vector>

#include "ppopt/circuit.hpp"
#include "ppopt/coupling.hpp"

namespace ppopt {

struct TooLarge : std::runtime_error {
    explicit TooLarge(int n)
        : std::runtime_error("dense simulation capped at 10 qubits, got " + std::to_string(n)) {}
};

// Column-major dense unitary: u[col] is the output statevector for basis
// input |col>, qubit i = bit i of the index.
using Unitary = std::vector<std::vector<std::complex<double>>>;

Unitary circuit_unitary(const Circuit& c);

// max-norm comparison after fitting a global phase from the
// largest-magnitude entry
bool unitaries_equal_up_to_phase(const Unitary& a, const Unitary& b, double tol);

bool unitary_equal(const Circuit& a, const Circuit& b, double tol = 1e-9);

// Physical-circuit comparison: checks U_phys == phase * P(final) * U_logical * P(init)^-1
// where P places logical wire l on physical wire map(l).  Both circuits
// must have the same qubit count (pad the logical one).
bool unitary_equal_mapped(const Circuit& logical, const Circuit& physical, const Mapping& init,
                          const Mapping& fin, double tol = 1e-9);

}  // namespace ppopt

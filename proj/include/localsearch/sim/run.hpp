#pragma once

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "localsearch/circuit/circuit.hpp"
#include "localsearch/sim/kernels.hpp"
#include "localsearch/sim/state_vector.hpp"

namespace localsearch::sim {

inline constexpr double kAncillaLeakTolerance = 1e-9;

/// Applies every gate to a state over the circuit's full register (data + ancillas).
inline void apply_circuit(StateVector& s, const circuit::Circuit& c) {
    if (s.qubits() != c.total_qubits()) throw InvalidArgument("state width does not match the circuit register");
    for (const auto& g : c.gates()) apply_gate(s, g);
}

/// Tensors ancillas in |0> onto the low-order end of the index.
inline StateVector with_ancillas(const StateVector& data, int ancillas) {
    if (ancillas == 0) return data;
    const int total = data.qubits() + ancillas;
    check_dense_width(total);
    std::vector<Amplitude> amps(std::size_t{1} << total);
    for (BasisIndex i = 0; i < data.dimension(); ++i) amps[i << ancillas] = data[i];
    return StateVector(total, std::move(amps));
}

/// Drops ancillas that must be back in |0>; throws if any amplitude leaked.
inline StateVector strip_ancillas(const StateVector& full, int ancillas) {
    if (ancillas == 0) return full;
    const int n = full.qubits() - ancillas;
    const BasisIndex low = (BasisIndex{1} << ancillas) - 1;
    double leaked = 0.0;
    std::vector<Amplitude> amps(std::size_t{1} << n);
    for (BasisIndex i = 0; i < full.dimension(); ++i) {
        if (i & low)
            leaked += std::norm(full[i]);
        else
            amps[i >> ancillas] = full[i];
    }
    if (leaked > kAncillaLeakTolerance) {
        throw InvalidArgument("ancillas not returned to |0> (leaked weight " + std::to_string(leaked) + ")");
    }
    return StateVector(n, std::move(amps));
}

/// Runs a circuit on a data-register state; ancillas start and must end in |0>.
inline StateVector run(const circuit::Circuit& c, const StateVector& input) {
    if (input.qubits() != c.width()) throw InvalidArgument("input state width does not match the circuit");
    auto full = with_ancillas(input, c.ancilla_count());
    apply_circuit(full, c);
    return strip_ancillas(full, c.ancilla_count());
}

inline StateVector run(const circuit::Circuit& c) { return run(c, StateVector(c.width())); }

/// Dense matrix, column j = image of basis state j.
struct Unitary {
    int qubits{0};
    std::vector<std::vector<Amplitude>> columns;
};

/// Action on the data register (ancillas enter and leave in |0>).
inline Unitary unitary(const circuit::Circuit& c) {
    Unitary u{c.width(), {}};
    const BasisIndex dim = BasisIndex{1} << c.width();
    u.columns.reserve(dim);
    for (BasisIndex j = 0; j < dim; ++j) u.columns.push_back(run(c, StateVector::basis(c.width(), j)).amplitudes());
    return u;
}

/// |<a|b>| == 1 within tolerance, i.e. equal up to a global phase.
inline bool states_equal_up_to_phase(const StateVector& a, const StateVector& b, double tol = 1e-9) {
    if (a.dimension() != b.dimension()) return false;
    Amplitude overlap{};
    for (BasisIndex i = 0; i < a.dimension(); ++i) overlap += std::conj(a[i]) * b[i];
    // Compare after removing the phase so small per-amplitude errors show up.
    const double mag = std::abs(overlap);
    if (mag < 1e-12) return false;
    const Amplitude phase = overlap / mag;
    double worst = 0.0;
    for (BasisIndex i = 0; i < a.dimension(); ++i) worst = std::max(worst, std::abs(a[i] * phase - b[i]));
    return worst <= tol;
}

inline bool unitaries_equal_up_to_phase(const Unitary& a, const Unitary& b, double tol = 1e-9) {
    if (a.qubits != b.qubits || a.columns.size() != b.columns.size()) return false;
    // One global phase, taken from the largest entry of the first column.
    const auto& a0 = a.columns.front();
    const auto& b0 = b.columns.front();
    std::size_t pivot = 0;
    for (std::size_t i = 1; i < a0.size(); ++i)
        if (std::abs(a0[i]) > std::abs(a0[pivot])) pivot = i;
    if (std::abs(a0[pivot]) < 1e-12 || std::abs(b0[pivot]) < 1e-12) return false;
    const Amplitude phase = b0[pivot] / a0[pivot];
    if (std::abs(std::abs(phase) - 1.0) > tol) return false;
    for (std::size_t j = 0; j < a.columns.size(); ++j)
        for (std::size_t i = 0; i < a0.size(); ++i)
            if (std::abs(a.columns[j][i] * phase - b.columns[j][i]) > tol) return false;
    return true;
}

}  // namespace localsearch::sim

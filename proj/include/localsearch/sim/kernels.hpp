#pragma once

// In-place gate application on dense state vectors.

#include <array>
#include <cmath>
#include <span>

#include "localsearch/circuit/builders.hpp"
#include "localsearch/circuit/gate.hpp"
#include "localsearch/sim/state_vector.hpp"

namespace localsearch::sim {

using Matrix2 = std::array<Amplitude, 4>;  // row-major

inline Matrix2 single_qubit_matrix(circuit::GateKind kind) {
    using circuit::GateKind;
    const double r = M_SQRT1_2;
    const Amplitude i{0.0, 1.0};
    const Amplitude t = std::polar(1.0, M_PI / 4);
    switch (kind) {
        case GateKind::H: return {r, r, r, -r};
        case GateKind::X: return {0.0, 1.0, 1.0, 0.0};
        case GateKind::Z: return {1.0, 0.0, 0.0, -1.0};
        case GateKind::S: return {1.0, 0.0, 0.0, i};
        case GateKind::Sdg: return {1.0, 0.0, 0.0, -i};
        case GateKind::T: return {1.0, 0.0, 0.0, t};
        case GateKind::Tdg: return {1.0, 0.0, 0.0, std::conj(t)};
        default: throw InvalidArgument("not a single-qubit gate");
    }
}

inline void apply_matrix(StateVector& s, int q, const Matrix2& m) {
    auto& a = s.amplitudes();
    const BasisIndex bit = qubit_mask(s.qubits(), q);
    for (BasisIndex i = 0; i < a.size(); ++i) {
        if (i & bit) continue;
        const Amplitude a0 = a[i];
        const Amplitude a1 = a[i | bit];
        a[i] = m[0] * a0 + m[1] * a1;
        a[i | bit] = m[2] * a0 + m[3] * a1;
    }
}

inline void apply_x(StateVector& s, int q) {
    auto& a = s.amplitudes();
    const BasisIndex bit = qubit_mask(s.qubits(), q);
    for (BasisIndex i = 0; i < a.size(); ++i)
        if (!(i & bit)) std::swap(a[i], a[i | bit]);
}

inline void apply_z(StateVector& s, int q) {
    auto& a = s.amplitudes();
    const BasisIndex bit = qubit_mask(s.qubits(), q);
    for (BasisIndex i = 0; i < a.size(); ++i)
        if (i & bit) a[i] = -a[i];
}

/// Y = i X Z.
inline void apply_y(StateVector& s, int q) {
    auto& a = s.amplitudes();
    const BasisIndex bit = qubit_mask(s.qubits(), q);
    const Amplitude i_unit{0.0, 1.0};
    for (BasisIndex i = 0; i < a.size(); ++i) {
        if (i & bit) continue;
        const Amplitude a0 = a[i];
        a[i] = -i_unit * a[i | bit];
        a[i | bit] = i_unit * a0;
    }
}

/// X on `target` wherever every qubit in `control_mask` is 1.
inline void apply_controlled_x(StateVector& s, BasisIndex control_mask, int target) {
    auto& a = s.amplitudes();
    const BasisIndex bit = qubit_mask(s.qubits(), target);
    for (BasisIndex i = 0; i < a.size(); ++i)
        if ((i & control_mask) == control_mask && !(i & bit)) std::swap(a[i], a[i | bit]);
}

/// -1 wherever every qubit in `mask` is 1.
inline void apply_controlled_z(StateVector& s, BasisIndex mask) {
    auto& a = s.amplitudes();
    for (BasisIndex i = 0; i < a.size(); ++i)
        if ((i & mask) == mask) a[i] = -a[i];
}

inline void apply_swap(StateVector& s, int p, int q) {
    auto& a = s.amplitudes();
    const BasisIndex bp = qubit_mask(s.qubits(), p);
    const BasisIndex bq = qubit_mask(s.qubits(), q);
    for (BasisIndex i = 0; i < a.size(); ++i)
        if ((i & bp) && !(i & bq)) std::swap(a[i], a[(i & ~bp) | bq]);
}

/// Negates amplitudes whose assignment of `operands` equals a marked pattern.
inline void apply_phase_flips(StateVector& s, std::span<const int> operands, std::span<const BasisIndex> marked) {
    const int n = s.qubits();
    const int w = static_cast<int>(operands.size());
    BasisIndex mask = 0;
    for (int q : operands) mask |= qubit_mask(n, q);
    auto& a = s.amplitudes();
    for (auto m : marked) {
        BasisIndex pattern = 0;
        for (int j = 0; j < w; ++j)
            if (m & qubit_mask(w, j)) pattern |= qubit_mask(n, operands[static_cast<std::size_t>(j)]);
        if (mask == full_mask(n)) {
            a[pattern] = -a[pattern];
            continue;
        }
        // Enumerate the free bits around the fixed pattern.
        const BasisIndex free = full_mask(n) & ~mask;
        BasisIndex sub = 0;
        do {
            a[sub | pattern] = -a[sub | pattern];
            sub = (sub - free) & free;
        } while (sub != 0);
    }
}

inline void apply_gate(StateVector& s, const circuit::Gate& g) {
    using circuit::GateKind;
    const int n = s.qubits();
    switch (g.kind) {
        case GateKind::X: apply_x(s, g.operands[0]); return;
        case GateKind::Z: apply_z(s, g.operands[0]); return;
        case GateKind::H:
        case GateKind::S:
        case GateKind::Sdg:
        case GateKind::T:
        case GateKind::Tdg: apply_matrix(s, g.operands[0], single_qubit_matrix(g.kind)); return;
        case GateKind::CNOT: apply_controlled_x(s, qubit_mask(n, g.operands[0]), g.operands[1]); return;
        case GateKind::CZ: apply_controlled_z(s, qubit_mask(n, g.operands[0]) | qubit_mask(n, g.operands[1])); return;
        case GateKind::SWAP: apply_swap(s, g.operands[0], g.operands[1]); return;
        case GateKind::MCX: {
            const auto controls = g.controls();
            apply_controlled_x(s, qubits_mask(n, controls), g.target());
            return;
        }
        case GateKind::MCZ: apply_controlled_z(s, qubits_mask(n, g.operands)); return;
        case GateKind::PhaseOracle: apply_phase_flips(s, g.operands, g.marked); return;
    }
}

/// Phase oracle on the full register, directly in amplitude space.
inline void apply_oracle_fast(StateVector& s, std::span<const BasisIndex> targets) {
    if (targets.empty()) throw InvalidArgument("oracle target set is empty");
    for (auto t : targets) {
        if (t >= s.dimension()) throw InvalidArgument("oracle target out of range");
    }
    for (auto t : targets) s[t] = -s[t];
}

/// Exact reflection (2|psi><psi|_S - I) (x) I: each block, fixed on the qubits
/// outside `subset`, is inverted about its mean. The gate-level fragment
/// implements the negation of this operator.
inline void apply_local_diffusion_fast(StateVector& s, std::span<const int> subset) {
    const int n = s.qubits();
    circuit::validate_subset(n, subset);
    const BasisIndex inner = qubits_mask(n, subset);
    const BasisIndex outer = full_mask(n) & ~inner;
    const double inv_block = std::exp2(-static_cast<double>(subset.size()));
    auto& a = s.amplitudes();
    BasisIndex key = 0;
    do {
        Amplitude sum{};
        BasisIndex sub = 0;
        do {
            sum += a[key | sub];
            sub = (sub - inner) & inner;
        } while (sub != 0);
        const Amplitude twice_mean = 2.0 * inv_block * sum;
        sub = 0;
        do {
            a[key | sub] = twice_mean - a[key | sub];
            sub = (sub - inner) & inner;
        } while (sub != 0);
        key = (key - outer) & outer;
    } while (key != 0);
}

inline void apply_global_diffusion_fast(StateVector& s) {
    const auto qubits = circuit::all_qubits(s.qubits());
    apply_local_diffusion_fast(s, qubits);
}

}  // namespace localsearch::sim

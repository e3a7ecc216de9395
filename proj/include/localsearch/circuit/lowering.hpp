#pragma once

// Lowering to {H, X, Z, S, Sdg, T, Tdg, CNOT}.
//
// Multi-controlled X gates follow the scheme in the cost model:
//   * Toffoli: the standard exact 6-CNOT Clifford+T network.
//   * v-chain: clean work qubits, relative-phase Toffolis (3 CNOTs) on the
//     compute/uncompute ladder and one exact Toffoli onto the target.
//   * borrowed / no-ancilla: split the controls in two halves around one
//     borrowed qubit, each half realized by an exact Toffoli ladder that uses
//     the other half as dirty work qubits. The borrowed qubit may hold any
//     state and is returned unchanged.

#include <algorithm>
#include <string>
#include <vector>

#include "localsearch/circuit/builders.hpp"
#include "localsearch/circuit/circuit.hpp"
#include "localsearch/circuit/cost_model.hpp"

namespace localsearch::circuit {

namespace detail {

using GateList = std::vector<Gate>;

inline void toffoli(GateList& out, int c1, int c2, int t) {
    out.push_back(Gate::h(t));
    out.push_back(Gate::cnot(c2, t));
    out.push_back(Gate::tdg(t));
    out.push_back(Gate::cnot(c1, t));
    out.push_back(Gate::t(t));
    out.push_back(Gate::cnot(c2, t));
    out.push_back(Gate::tdg(t));
    out.push_back(Gate::cnot(c1, t));
    out.push_back(Gate::t(c2));
    out.push_back(Gate::t(t));
    out.push_back(Gate::h(t));
    out.push_back(Gate::cnot(c1, c2));
    out.push_back(Gate::t(c1));
    out.push_back(Gate::tdg(c2));
    out.push_back(Gate::cnot(c1, c2));
}

// Toffoli up to a diagonal phase on (c1, c2, t); only valid when undone by
// relative_toffoli_inverse on the same qubits.
inline void relative_toffoli(GateList& out, int c1, int c2, int t) {
    out.push_back(Gate::h(t));
    out.push_back(Gate::t(t));
    out.push_back(Gate::cnot(c2, t));
    out.push_back(Gate::tdg(t));
    out.push_back(Gate::cnot(c1, t));
    out.push_back(Gate::t(t));
    out.push_back(Gate::cnot(c2, t));
    out.push_back(Gate::tdg(t));
    out.push_back(Gate::h(t));
}

inline void relative_toffoli_inverse(GateList& out, int c1, int c2, int t) {
    out.push_back(Gate::h(t));
    out.push_back(Gate::t(t));
    out.push_back(Gate::cnot(c2, t));
    out.push_back(Gate::tdg(t));
    out.push_back(Gate::cnot(c1, t));
    out.push_back(Gate::t(t));
    out.push_back(Gate::cnot(c2, t));
    out.push_back(Gate::tdg(t));
    out.push_back(Gate::h(t));
}

// Exact C^j X using j - 2 dirty qubits (Toffoli staircase, 4(j-2) Toffolis).
inline void mcx_dirty_ladder(GateList& out, const std::vector<int>& c, int target, const std::vector<int>& dirty) {
    const int j = static_cast<int>(c.size());
    if (j == 1) {
        out.push_back(Gate::cnot(c[0], target));
        return;
    }
    if (j == 2) {
        toffoli(out, c[0], c[1], target);
        return;
    }
    if (static_cast<int>(dirty.size()) < j - 2) throw InsufficientAncillas("dirty ladder needs more work qubits");
    // 1-based names: controls c_1..c_j, work a_1..a_{j-2}.
    auto C = [&](int i) { return c[static_cast<std::size_t>(i - 1)]; };
    auto A = [&](int i) { return dirty[static_cast<std::size_t>(i - 1)]; };
    auto down_up = [&] {
        for (int i = j - 1; i >= 3; --i) toffoli(out, C(i), A(i - 2), A(i - 1));
        toffoli(out, C(1), C(2), A(1));
        for (int i = 3; i <= j - 1; ++i) toffoli(out, C(i), A(i - 2), A(i - 1));
    };
    toffoli(out, C(j), A(j - 2), target);
    down_up();
    toffoli(out, C(j), A(j - 2), target);
    down_up();
}

inline void mcx_split_borrowed(GateList& out, const std::vector<int>& controls, int target, int borrowed) {
    const int k = static_cast<int>(controls.size());
    const int first = (k + 1) / 2;
    std::vector<int> a(controls.begin(), controls.begin() + first);
    std::vector<int> b(controls.begin() + first, controls.end());
    b.push_back(borrowed);
    std::vector<int> dirty_for_a(controls.begin() + first, controls.end());
    dirty_for_a.push_back(target);
    const std::vector<int>& dirty_for_b = a;
    for (int rep = 0; rep < 2; ++rep) {
        mcx_dirty_ladder(out, a, borrowed, dirty_for_a);
        mcx_dirty_ladder(out, b, target, dirty_for_b);
    }
}

inline void mcx_vchain(GateList& out, const std::vector<int>& controls, int target, const std::vector<int>& work) {
    const int k = static_cast<int>(controls.size());
    relative_toffoli(out, controls[0], controls[1], work[0]);
    for (int i = 2; i < k - 1; ++i) relative_toffoli(out, controls[static_cast<std::size_t>(i)], work[static_cast<std::size_t>(i - 2)], work[static_cast<std::size_t>(i - 1)]);
    toffoli(out, controls.back(), work[static_cast<std::size_t>(k - 3)], target);
    for (int i = k - 2; i >= 2; --i) relative_toffoli_inverse(out, controls[static_cast<std::size_t>(i)], work[static_cast<std::size_t>(i - 2)], work[static_cast<std::size_t>(i - 1)]);
    relative_toffoli_inverse(out, controls[0], controls[1], work[0]);
}

struct LoweringContext {
    const CostModel& model;
    int register_size;           // qubits of the lowered circuit
    int first_work_qubit;        // work qubits are [first_work_qubit, register_size)

    std::vector<int> work_qubits(int count) const {
        std::vector<int> w;
        for (int i = 0; i < count; ++i) w.push_back(first_work_qubit + i);
        return w;
    }
};

inline void lower_mcx(GateList& out, const std::vector<int>& controls, int target, const LoweringContext& ctx) {
    const int k = static_cast<int>(controls.size());
    if (k <= 2) {
        mcx_dirty_ladder(out, controls, target, {});
        return;
    }
    switch (ctx.model.mcx_scheme) {
        case McxScheme::VChain: mcx_vchain(out, controls, target, ctx.work_qubits(k - 2)); return;
        case McxScheme::BorrowedAncillaLinear: mcx_split_borrowed(out, controls, target, ctx.first_work_qubit); return;
        case McxScheme::NoAncillaRecursive: {
            for (int q = 0; q < ctx.register_size; ++q) {
                if (q != target && std::find(controls.begin(), controls.end(), q) == controls.end()) {
                    mcx_split_borrowed(out, controls, target, q);
                    return;
                }
            }
            throw InsufficientAncillas("no-ancilla scheme: MCX with " + std::to_string(k) +
                                       " controls spans the whole register; no idle qubit to borrow");
        }
    }
}

inline void lower_gate(GateList& out, const Gate& g, const LoweringContext& ctx) {
    switch (g.kind) {
        case GateKind::CZ:
            out.push_back(Gate::h(g.operands[1]));
            out.push_back(Gate::cnot(g.operands[0], g.operands[1]));
            out.push_back(Gate::h(g.operands[1]));
            return;
        case GateKind::SWAP:
            out.push_back(Gate::cnot(g.operands[0], g.operands[1]));
            out.push_back(Gate::cnot(g.operands[1], g.operands[0]));
            out.push_back(Gate::cnot(g.operands[0], g.operands[1]));
            return;
        case GateKind::MCX: lower_mcx(out, g.controls(), g.target(), ctx); return;
        case GateKind::MCZ:
            out.push_back(Gate::h(g.target()));
            lower_mcx(out, g.controls(), g.target(), ctx);
            out.push_back(Gate::h(g.target()));
            return;
        case GateKind::PhaseOracle: {
            const int width = static_cast<int>(g.operands.size());
            for (auto marked : g.marked) {
                const auto fragment = build_oracle(width, std::span<const BasisIndex>(&marked, 1));
                for (auto sub : fragment.gates()) {
                    for (int& q : sub.operands) q = g.operands[static_cast<std::size_t>(q)];
                    lower_gate(out, sub, ctx);
                }
            }
            return;
        }
        default: out.push_back(g); return;
    }
}

/// Controls of the widest multi-controlled X the gate lowers to.
inline int max_controls(const Gate& g) {
    switch (g.kind) {
        case GateKind::MCX:
        case GateKind::MCZ:
        case GateKind::PhaseOracle: return static_cast<int>(g.operands.size()) - 1;
        default: return 0;
    }
}

}  // namespace detail

/// Work qubits the scheme needs for this circuit.
inline int required_ancillas(const Circuit& c, const CostModel& model) {
    int need = 0;
    for (const auto& g : c.gates()) need = std::max(need, model.mcx_ancillas(detail::max_controls(g)));
    return need;
}

/// Rewrites every gate into single-qubit gates and CNOTs.
///
/// Work qubits are appended after the circuit's existing qubits; the result
/// is unitarily equivalent on the original register with work qubits
/// starting and ending in |0>.
inline Circuit lower(const Circuit& c, const CostModel& model = CostModel::defaults()) {
    const int need = required_ancillas(c, model);
    if (model.ancilla_budget && need > *model.ancilla_budget) {
        throw InsufficientAncillas(std::string(to_string(model.mcx_scheme)) + " needs " + std::to_string(need) +
                                   " ancilla(s), budget is " + std::to_string(*model.ancilla_budget));
    }
    Circuit out(c.width(), c.ancilla_count() + need);
    const detail::LoweringContext ctx{model, out.total_qubits(), c.total_qubits()};
    detail::GateList buffer;
    for (const auto& g : c.gates()) {
        buffer.clear();
        detail::lower_gate(buffer, g, ctx);
        for (auto& lg : buffer) out.add(std::move(lg));
    }
    return out;
}

}  // namespace localsearch::circuit

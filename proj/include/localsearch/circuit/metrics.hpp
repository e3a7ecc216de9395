#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "localsearch/circuit/circuit.hpp"
#include "localsearch/circuit/cost_model.hpp"
#include "localsearch/circuit/lowering.hpp"

namespace localsearch::circuit {

/// Longest dependency chain; every gate is one layer on its operands, and
/// gates on disjoint qubits share a layer. Intended for lowered circuits.
inline std::int64_t depth(const Circuit& c) {
    std::vector<std::int64_t> level(static_cast<std::size_t>(c.total_qubits()), 0);
    std::int64_t deepest = 0;
    for (const auto& g : c.gates()) {
        std::int64_t start = 0;
        for (int q : g.operands) start = std::max(start, level[static_cast<std::size_t>(q)]);
        for (int q : g.operands) level[static_cast<std::size_t>(q)] = start + 1;
        deepest = std::max(deepest, start + 1);
    }
    return deepest;
}

inline std::int64_t cnot_count(const Circuit& c) {
    return std::count_if(c.gates().begin(), c.gates().end(), [](const Gate& g) { return g.kind == GateKind::CNOT; });
}

struct CostEstimate {
    std::int64_t cnots{0};
    std::int64_t depth{0};
    friend bool operator==(const CostEstimate&, const CostEstimate&) = default;
};

/// Cost of a circuit under the model: oracle gates are charged as opaque
/// blocks (oracle_cnots / oracle_depth per marked state) spanning their
/// operands, every other gate is lowered and scheduled with the model's
/// per-gate depth units.
inline CostEstimate estimate_cost(const Circuit& c, const CostModel& model = CostModel::defaults()) {
    const int need = required_ancillas(c, model);
    const int register_size = c.total_qubits() + need;
    const detail::LoweringContext ctx{model, register_size, c.total_qubits()};
    std::vector<std::int64_t> level(static_cast<std::size_t>(register_size), 0);
    CostEstimate est;
    auto schedule = [&](const std::vector<int>& qubits, std::int64_t duration) {
        std::int64_t start = 0;
        for (int q : qubits) start = std::max(start, level[static_cast<std::size_t>(q)]);
        for (int q : qubits) level[static_cast<std::size_t>(q)] = start + duration;
        est.depth = std::max(est.depth, start + duration);
    };
    detail::GateList buffer;
    for (const auto& g : c.gates()) {
        if (g.kind == GateKind::PhaseOracle) {
            const int width = static_cast<int>(g.operands.size());
            for (std::size_t i = 0; i < g.marked.size(); ++i) {
                est.cnots += model.oracle_cnots(width);
                schedule(g.operands, model.oracle_depth(width));
            }
            continue;
        }
        buffer.clear();
        detail::lower_gate(buffer, g, ctx);
        for (const auto& lg : buffer) {
            const bool is_cnot = lg.kind == GateKind::CNOT;
            est.cnots += is_cnot ? 1 : 0;
            schedule(lg.operands, is_cnot ? model.depth_cnot : model.depth_1q);
        }
    }
    return est;
}

}  // namespace localsearch::circuit

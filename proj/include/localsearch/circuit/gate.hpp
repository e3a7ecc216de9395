#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "localsearch/bitstring.hpp"
#include "localsearch/errors.hpp"

namespace localsearch::circuit {

// S/Sdg/T/Tdg are fixed-angle gates emitted only by lowering (exact Toffoli).
enum class GateKind : std::uint8_t {
    H,
    X,
    Z,
    S,
    Sdg,
    T,
    Tdg,
    CNOT,
    CZ,
    SWAP,
    MCX,
    MCZ,
    PhaseOracle,
};

constexpr std::string_view to_string(GateKind kind) noexcept {
    switch (kind) {
        case GateKind::H: return "H";
        case GateKind::X: return "X";
        case GateKind::Z: return "Z";
        case GateKind::S: return "S";
        case GateKind::Sdg: return "Sdg";
        case GateKind::T: return "T";
        case GateKind::Tdg: return "Tdg";
        case GateKind::CNOT: return "CNOT";
        case GateKind::CZ: return "CZ";
        case GateKind::SWAP: return "SWAP";
        case GateKind::MCX: return "MCX";
        case GateKind::MCZ: return "MCZ";
        case GateKind::PhaseOracle: return "PhaseOracle";
    }
    return "?";
}

inline std::optional<GateKind> gate_kind_from_string(std::string_view name) noexcept {
    for (auto k : {GateKind::H, GateKind::X, GateKind::Z, GateKind::S, GateKind::Sdg, GateKind::T,
                   GateKind::Tdg, GateKind::CNOT, GateKind::CZ, GateKind::SWAP, GateKind::MCX,
                   GateKind::MCZ, GateKind::PhaseOracle}) {
        if (to_string(k) == name) return k;
    }
    return std::nullopt;
}

constexpr bool is_single_qubit(GateKind kind) noexcept {
    switch (kind) {
        case GateKind::H:
        case GateKind::X:
        case GateKind::Z:
        case GateKind::S:
        case GateKind::Sdg:
        case GateKind::T:
        case GateKind::Tdg: return true;
        default: return false;
    }
}

/// One gate of the IR.
///
/// For MCX/MCZ the operands are the controls followed by the target. For
/// PhaseOracle, `marked` holds basis states of the operand sub-register
/// (operand 0 is the most significant bit).
struct Gate {
    GateKind kind{GateKind::H};
    std::vector<int> operands;
    std::vector<BasisIndex> marked;

    static Gate h(int q) { return {GateKind::H, {q}, {}}; }
    static Gate x(int q) { return {GateKind::X, {q}, {}}; }
    static Gate z(int q) { return {GateKind::Z, {q}, {}}; }
    static Gate s(int q) { return {GateKind::S, {q}, {}}; }
    static Gate sdg(int q) { return {GateKind::Sdg, {q}, {}}; }
    static Gate t(int q) { return {GateKind::T, {q}, {}}; }
    static Gate tdg(int q) { return {GateKind::Tdg, {q}, {}}; }
    static Gate cnot(int control, int target) { return {GateKind::CNOT, {control, target}, {}}; }
    static Gate cz(int a, int b) { return {GateKind::CZ, {a, b}, {}}; }
    static Gate swap(int a, int b) { return {GateKind::SWAP, {a, b}, {}}; }

    static Gate mcx(std::vector<int> controls, int target) {
        controls.push_back(target);
        return {GateKind::MCX, std::move(controls), {}};
    }
    /// MCZ is symmetric in its operands; the last one is nominally the target.
    static Gate mcz(std::vector<int> qubits) { return {GateKind::MCZ, std::move(qubits), {}}; }

    static Gate phase_oracle(std::vector<int> qubits, std::vector<BasisIndex> marked) {
        std::sort(marked.begin(), marked.end());
        marked.erase(std::unique(marked.begin(), marked.end()), marked.end());
        return {GateKind::PhaseOracle, std::move(qubits), std::move(marked)};
    }

    int target() const { return operands.back(); }
    std::vector<int> controls() const { return {operands.begin(), operands.end() - 1}; }

    /// Structural checks that do not depend on the enclosing circuit.
    void validate() const {
        const auto arity = operands.size();
        auto fail = [&](const std::string& why) {
            throw InvalidArgument(std::string(to_string(kind)) + " gate: " + why);
        };
        if (arity == 0) fail("no operands");
        for (std::size_t i = 0; i < arity; ++i) {
            if (operands[i] < 0) fail("negative qubit index");
            for (std::size_t j = i + 1; j < arity; ++j) {
                if (operands[i] == operands[j]) fail("duplicate operand " + std::to_string(operands[i]));
            }
        }
        if (is_single_qubit(kind) && arity != 1) fail("expects exactly one operand");
        if ((kind == GateKind::CNOT || kind == GateKind::CZ || kind == GateKind::SWAP) && arity != 2) {
            fail("expects exactly two operands");
        }
        if ((kind == GateKind::MCX || kind == GateKind::MCZ) && arity < 2) fail("needs at least one control");
        if (kind == GateKind::PhaseOracle) {
            if (marked.empty()) fail("marked set is empty");
            if (arity > static_cast<std::size_t>(kMaxIndexBits)) fail("too many operands");
            for (auto m : marked) {
                if (m > full_mask(static_cast<int>(arity))) fail("marked state out of range");
            }
        }
    }

    friend bool operator==(const Gate&, const Gate&) = default;
};

}  // namespace localsearch::circuit

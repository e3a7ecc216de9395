#pragma once

#include <algorithm>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "localsearch/circuit/gate.hpp"
#include "localsearch/errors.hpp"

namespace localsearch::circuit {

/// Ordered gate list over `width` data qubits plus `ancilla_count` work qubits.
///
/// Ancillas occupy indices [width, width + ancilla_count) and are expected to
/// start and end in |0>. A Circuit is built by appending and afterwards
/// treated as a value.
class Circuit {
public:
    Circuit() = default;
    explicit Circuit(int width, int ancilla_count = 0) : width_(width), ancillas_(ancilla_count) {
        if (width < 1) throw InvalidArgument("circuit width must be at least 1");
        if (ancilla_count < 0) throw InvalidArgument("ancilla count must be non-negative");
    }

    int width() const noexcept { return width_; }
    int ancilla_count() const noexcept { return ancillas_; }
    int total_qubits() const noexcept { return width_ + ancillas_; }
    std::span<const Gate> gates() const noexcept { return gates_; }
    std::size_t size() const noexcept { return gates_.size(); }
    bool empty() const noexcept { return gates_.empty(); }

    Circuit& add(Gate gate) {
        gate.validate();
        for (int q : gate.operands) {
            if (q >= total_qubits()) {
                throw InvalidArgument(std::string(to_string(gate.kind)) + " operand " + std::to_string(q) +
                                      " outside register of " + std::to_string(total_qubits()) + " qubits");
            }
        }
        gates_.push_back(std::move(gate));
        return *this;
    }

    /// Appends a fragment built over the same data width (its ancillas are merged).
    Circuit& append(const Circuit& fragment) {
        if (fragment.width_ > width_) throw InvalidArgument("fragment is wider than the circuit");
        if (fragment.width_ == width_) {
            ancillas_ = std::max(ancillas_, fragment.ancillas_);
            for (const auto& g : fragment.gates_) add(g);
            return *this;
        }
        if (fragment.ancillas_ != 0) throw InvalidArgument("cannot embed a narrower fragment that uses ancillas");
        for (const auto& g : fragment.gates_) add(g);
        return *this;
    }

    void reserve_ancillas(int count) { ancillas_ = std::max(ancillas_, count); }

    /// True when every gate is a single-qubit gate or a CNOT.
    bool is_lowered() const noexcept {
        return std::all_of(gates_.begin(), gates_.end(), [](const Gate& g) {
            return is_single_qubit(g.kind) || g.kind == GateKind::CNOT;
        });
    }

    friend bool operator==(const Circuit&, const Circuit&) = default;

private:
    int width_{1};
    int ancillas_{0};
    std::vector<Gate> gates_;
};

}  // namespace localsearch::circuit

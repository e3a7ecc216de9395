#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "localsearch/errors.hpp"

namespace localsearch::circuit {

enum class McxScheme : std::uint8_t {
    /// One work qubit, usable even when dirty; linear Toffoli ladders.
    BorrowedAncillaLinear,
    /// k-2 clean work qubits for k controls; relative-phase Toffoli ladder.
    VChain,
    /// No work qubits allocated; borrows an idle register qubit instead.
    NoAncillaRecursive,
};

constexpr std::string_view to_string(McxScheme s) noexcept {
    switch (s) {
        case McxScheme::BorrowedAncillaLinear: return "borrowed-ancilla-linear";
        case McxScheme::VChain: return "v-chain";
        case McxScheme::NoAncillaRecursive: return "no-ancilla-recursive";
    }
    return "?";
}

inline McxScheme mcx_scheme_from_string(std::string_view name) {
    for (auto s : {McxScheme::BorrowedAncillaLinear, McxScheme::VChain, McxScheme::NoAncillaRecursive}) {
        if (to_string(s) == name) return s;
    }
    throw InvalidArgument("unknown mcx scheme '" + std::string(name) + "'");
}

/// CNOTs of an exact Toffoli ladder for `controls` controls with enough dirty qubits.
constexpr std::int64_t dirty_ladder_cnots(int controls) noexcept {
    if (controls <= 1) return controls;
    if (controls == 2) return 6;
    return 24LL * (controls - 2);
}

/// Depth and CNOT functions for oracle and diffusion constructs.
///
/// Gate-level quantities (mcx_cnots, depth_1q, depth_cnot) describe lowered
/// circuits. The block-level functions (oracle_*, diffusion_depth) are
/// calibration knobs used when an oracle is charged as an opaque block and
/// when the minimum-expected-depth analysis needs d_O and d_D directly.
struct CostModel {
    int depth_1q{1};
    int depth_cnot{1};
    McxScheme mcx_scheme{McxScheme::BorrowedAncillaLinear};
    std::optional<int> ancilla_budget{};

    // d_D(w) = alpha * w + beta for w >= 2; a one-qubit reflection is a single X.
    // Anchors: the lowered two-qubit diffusion has depth 7, and the n = 6 Grover
    // iteration (oracle plus diffusion) costs 126 layers.
    std::int64_t diffusion_alpha{14};
    std::int64_t diffusion_beta{-21};

    std::function<std::int64_t(int)> oracle_depth_fn{};
    std::function<std::int64_t(int)> oracle_cnot_fn{};

    static CostModel defaults() { return CostModel{}; }

    std::int64_t diffusion_depth(int width) const {
        if (width < 1) throw InvalidArgument("diffusion width must be positive");
        if (width == 1) return depth_1q;
        return diffusion_alpha * width + diffusion_beta;
    }

    /// Defaults to the diffusion depth: both are one n-qubit MCZ between 1q layers.
    std::int64_t oracle_depth(int n) const { return oracle_depth_fn ? oracle_depth_fn(n) : diffusion_depth(n); }

    /// Default is calibrated to 10 CNOTs at n = 4 and grows by one Toffoli
    /// (6 CNOTs) per extra qubit; exact for n <= 3 (Z, CZ, CCZ).
    std::int64_t oracle_cnots(int n) const {
        if (oracle_cnot_fn) return oracle_cnot_fn(n);
        if (n <= 1) return 0;
        if (n == 2) return 1;
        if (n == 3) return 6;
        return 6LL * n - 14;
    }

    /// Work qubits needed to lower one MCX with `controls` controls.
    int mcx_ancillas(int controls) const noexcept {
        if (controls <= 2) return 0;
        switch (mcx_scheme) {
            case McxScheme::BorrowedAncillaLinear: return 1;
            case McxScheme::VChain: return controls - 2;
            case McxScheme::NoAncillaRecursive: return 0;
        }
        return 0;
    }

    /// CNOT count of one lowered MCX; agrees with `lower` (checked in tests).
    std::int64_t mcx_cnots(int controls) const noexcept {
        if (controls <= 2) return dirty_ladder_cnots(controls);
        switch (mcx_scheme) {
            case McxScheme::VChain: return 6LL * controls - 6;
            case McxScheme::BorrowedAncillaLinear:
            case McxScheme::NoAncillaRecursive: {
                const int first = (controls + 1) / 2;
                const int second = controls - first + 1;
                return 2 * (dirty_ladder_cnots(first) + dirty_ladder_cnots(second));
            }
        }
        return 0;
    }

    void validate() const {
        if (depth_1q < 1 || depth_cnot < 1) throw InvalidArgument("gate depth units must be positive");
        if (ancilla_budget && *ancilla_budget < 0) throw InvalidArgument("ancilla budget must be non-negative");
        for (int w = 1; w <= 64; ++w) {
            if (diffusion_depth(w) < 0) throw InvalidArgument("diffusion depth model is negative at width " + std::to_string(w));
            if (oracle_depth(w) < 0 || oracle_cnots(w) < 0) throw InvalidArgument("oracle cost is negative at n=" + std::to_string(w));
        }
    }
};

}  // namespace localsearch::circuit

#pragma once

// Oracle and diffusion fragments.
//
// Reflections are realized as H/X-conjugated multi-controlled Z gates, which
// implement the ideal operators up to a global phase of -1.

#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "localsearch/bitstring.hpp"
#include "localsearch/circuit/circuit.hpp"

namespace localsearch::circuit {

inline void validate_subset(int n, std::span<const int> subset) {
    if (subset.empty()) throw InvalidArgument("diffusion subset is empty");
    for (std::size_t i = 0; i < subset.size(); ++i) {
        if (subset[i] < 0 || subset[i] >= n) {
            throw InvalidArgument("diffusion qubit " + std::to_string(subset[i]) + " out of range for n=" +
                                  std::to_string(n));
        }
        for (std::size_t j = i + 1; j < subset.size(); ++j) {
            if (subset[i] == subset[j]) throw InvalidArgument("duplicate diffusion qubit " + std::to_string(subset[i]));
        }
    }
}

inline std::vector<int> all_qubits(int n) {
    std::vector<int> qs(static_cast<std::size_t>(n));
    std::iota(qs.begin(), qs.end(), 0);
    return qs;
}

inline std::vector<BasisIndex> parse_targets(std::span<const std::string> targets, int n) {
    if (targets.empty()) throw InvalidArgument("oracle target set is empty");
    std::vector<BasisIndex> out;
    out.reserve(targets.size());
    for (const auto& t : targets) out.push_back(parse_bitstring(t, n));
    return out;
}

/// Phase flip on one or more basis states: X-conjugated MCZ per target.
inline Circuit build_oracle(int n, std::span<const BasisIndex> targets) {
    if (targets.empty()) throw InvalidArgument("oracle target set is empty");
    Circuit c(n);
    const auto qubits = all_qubits(n);
    for (auto target : targets) {
        if (target > full_mask(n)) throw InvalidArgument("oracle target out of range");
        if (n == 1) {
            if (target == 0) c.add(Gate::x(0));
            c.add(Gate::z(0));
            if (target == 0) c.add(Gate::x(0));
            continue;
        }
        for (int q = 0; q < n; ++q)
            if (!(target & qubit_mask(n, q))) c.add(Gate::x(q));
        c.add(Gate::mcz(qubits));
        for (int q = 0; q < n; ++q)
            if (!(target & qubit_mask(n, q))) c.add(Gate::x(q));
    }
    return c;
}

inline Circuit build_oracle(int n, std::span<const std::string> targets) {
    const auto parsed = parse_targets(targets, n);
    return build_oracle(n, std::span<const BasisIndex>(parsed));
}

/// The oracle as a single opaque gate over all n qubits.
inline Gate oracle_gate(int n, std::span<const BasisIndex> targets) {
    if (targets.empty()) throw InvalidArgument("oracle target set is empty");
    return Gate::phase_oracle(all_qubits(n), {targets.begin(), targets.end()});
}

/// Inversion about the mean of each block, where a block fixes every qubit
/// outside `subset`.
inline Circuit build_local_diffusion(int n, std::span<const int> subset) {
    validate_subset(n, subset);
    Circuit c(n);
    for (int q : subset) c.add(Gate::h(q));
    for (int q : subset) c.add(Gate::x(q));
    if (subset.size() == 1) {
        c.add(Gate::z(subset[0]));
    } else {
        c.add(Gate::mcz({subset.begin(), subset.end()}));
    }
    for (int q : subset) c.add(Gate::x(q));
    for (int q : subset) c.add(Gate::h(q));
    return c;
}

inline Circuit build_global_diffusion(int n) {
    if (n < 1) throw InvalidArgument("diffusion needs at least one qubit");
    const auto qubits = all_qubits(n);
    return build_local_diffusion(n, qubits);
}

inline Circuit build_uniform_preparation(int n) {
    Circuit c(n);
    for (int q = 0; q < n; ++q) c.add(Gate::h(q));
    return c;
}

}  // namespace localsearch::circuit

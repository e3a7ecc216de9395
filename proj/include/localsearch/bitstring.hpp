#pragma once

// Basis-state indexing helpers.
//
// Qubit 0 is the most significant bit of a basis-state index: in an n-qubit
// register, qubit q corresponds to bit (n - 1 - q). Bitstrings are rendered
// qubit-0-first, so the string "1100" is index 12 for n = 4.

#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include "localsearch/errors.hpp"

namespace localsearch {

using BasisIndex = std::uint64_t;

inline constexpr int kMaxIndexBits = 62;

/// Bit mask selecting qubit `q` in an `n`-qubit register.
constexpr BasisIndex qubit_mask(int n, int q) noexcept {
    return BasisIndex{1} << (n - 1 - q);
}

constexpr BasisIndex qubits_mask(int n, std::span<const int> qubits) noexcept {
    BasisIndex mask = 0;
    for (int q : qubits) mask |= qubit_mask(n, q);
    return mask;
}

constexpr BasisIndex full_mask(int n) noexcept {
    return n >= 64 ? ~BasisIndex{0} : (BasisIndex{1} << n) - 1;
}

/// Parses an n-bit string (qubit 0 first) into a basis index.
inline BasisIndex parse_bitstring(std::string_view bits, int n) {
    if (n < 1 || n > kMaxIndexBits) throw InvalidArgument("bitstring width out of range");
    if (static_cast<int>(bits.size()) != n) {
        throw InvalidArgument("bitstring '" + std::string(bits) + "' does not have length " +
                              std::to_string(n));
    }
    BasisIndex value = 0;
    for (char c : bits) {
        if (c != '0' && c != '1') {
            throw InvalidArgument("bitstring '" + std::string(bits) + "' contains a non-binary digit");
        }
        value = (value << 1) | static_cast<BasisIndex>(c == '1');
    }
    return value;
}

inline std::string format_bitstring(BasisIndex value, int n) {
    std::string out(static_cast<std::size_t>(n), '0');
    for (int q = 0; q < n; ++q) {
        if (value & qubit_mask(n, q)) out[static_cast<std::size_t>(q)] = '1';
    }
    return out;
}

}  // namespace localsearch

#pragma once

// Step sequences for the three search variants. A step is one oracle call
// followed by one diffusion (global, or local on a qubit subset).

#include <algorithm>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "localsearch/circuit/builders.hpp"
#include "localsearch/errors.hpp"

namespace localsearch::algorithms {

enum class DiffusionKind { Global, Local };

struct Step {
    DiffusionKind kind{DiffusionKind::Global};
    std::vector<int> subset;  // all qubits for Global

    static Step global(int n) { return {DiffusionKind::Global, circuit::all_qubits(n)}; }
    static Step local(std::vector<int> subset) { return {DiffusionKind::Local, std::move(subset)}; }

    friend bool operator==(const Step&, const Step&) = default;
};

using Sequence = std::vector<Step>;

/// Qubits [first, first + count).
inline std::vector<int> qubit_range(int first, int count) {
    std::vector<int> out;
    for (int q = first; q < first + count; ++q) out.push_back(q);
    return out;
}

inline void validate_sequence(int n, const Sequence& steps) {
    for (const auto& s : steps) {
        circuit::validate_subset(n, s.subset);
        if (s.kind == DiffusionKind::Global && static_cast<int>(s.subset.size()) != n)
            throw InvalidArgument("a global step must cover every qubit");
    }
}

/// k rounds of (oracle, global diffusion).
inline Sequence grover_sequence(int n, int k) {
    if (n < 1) throw InvalidArgument("n must be at least 1");
    if (k < 0) throw InvalidArgument("k must be non-negative");
    return Sequence(static_cast<std::size_t>(k), Step::global(n));
}

enum class PatternItem { Local, Global };

/// Oracle plus the named diffusion per pattern entry; local = first m qubits.
inline Sequence partial_sequence(int n, int m, const std::vector<PatternItem>& pattern) {
    if (m < 1 || m >= n) throw InvalidArgument("partial search needs 1 <= m < n");
    Sequence out;
    for (auto p : pattern) out.push_back(p == PatternItem::Global ? Step::global(n) : Step::local(qubit_range(0, m)));
    return out;
}

/// Preset local width for n qubits: everything but the last two qubits.
inline int default_partial_m(int n) { return n - 2; }

/// `paper-4q` (n=4, m=2) and `paper-6q` (n=6, m=4) are both [local, global, local].
inline Sequence partial_preset(std::string_view name, int n) {
    const std::vector<PatternItem> lgl{PatternItem::Local, PatternItem::Global, PatternItem::Local};
    if (name == "paper-4q") {
        if (n != 4) throw InvalidArgument("preset paper-4q needs n = 4");
        return partial_sequence(4, 2, lgl);
    }
    if (name == "paper-6q") {
        if (n != 6) throw InvalidArgument("preset paper-6q needs n = 6");
        return partial_sequence(6, 4, lgl);
    }
    if (name == "lgl") return partial_sequence(n, default_partial_m(n), lgl);
    throw InvalidArgument("unknown partial preset '" + std::string(name) + "'");
}

enum class Tail { None, ExtraFirstLocal };

/// Subsets of the two alternating local searches. By default the first acts on
/// the last m qubits and the second on the first n - m; `swap` applies the
/// first to the first m qubits and the second to the remaining n - m.
struct Partition {
    std::vector<int> first;
    std::vector<int> second;
};

inline Partition efficient_partition(int n, int m, bool swap = false) {
    if (m < 1 || m >= n) throw InvalidArgument("efficient search needs 1 <= m < n");
    if (swap) return {qubit_range(0, m), qubit_range(m, n - m)};
    return {qubit_range(n - m, m), qubit_range(0, n - m)};
}

/// k rounds of (k1 first-subset steps, k2 second-subset steps), optional tail.
inline Sequence efficient_sequence(int n, int m, int k1, int k2, int k, Tail tail = Tail::None, bool swap = false) {
    const auto part = efficient_partition(n, m, swap);
    if (k1 < 1 || k2 < 1) throw InvalidArgument("k1 and k2 must be at least 1");
    if (k < 0) throw InvalidArgument("k must be non-negative");
    Sequence out;
    for (int r = 0; r < k; ++r) {
        for (int i = 0; i < k1; ++i) out.push_back(Step::local(part.first));
        for (int i = 0; i < k2; ++i) out.push_back(Step::local(part.second));
    }
    if (tail == Tail::ExtraFirstLocal) out.push_back(Step::local(part.first));
    return out;
}

inline std::string_view to_string(Tail t) { return t == Tail::None ? "none" : "extra-first-local"; }

inline Tail tail_from_string(std::string_view s) {
    if (s == "none") return Tail::None;
    if (s == "extra-first-local" || s == "extra") return Tail::ExtraFirstLocal;
    throw InvalidArgument("unknown tail '" + std::string(s) + "'");
}

inline nlohmann::json to_json(const Step& s) {
    return {{"diffusion", s.kind == DiffusionKind::Global ? "global" : "local"}, {"subset", s.subset}};
}

inline Step step_from_json(const nlohmann::json& j, int n) {
    const auto kind = j.at("diffusion").get<std::string>();
    if (kind == "global") return Step::global(n);
    if (kind == "local") return Step::local(j.at("subset").get<std::vector<int>>());
    throw InvalidArgument("unknown diffusion kind '" + kind + "'");
}

}  // namespace localsearch::algorithms

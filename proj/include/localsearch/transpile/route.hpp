#pragma once

// SWAP insertion for lowered circuits. Greedy: while a CNOT's endpoints are
// not adjacent, swap one endpoint one step along a shortest path, picking the
// step that also helps the next few two-qubit gates most.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include "localsearch/circuit/circuit.hpp"
#include "localsearch/circuit/metrics.hpp"
#include "localsearch/rng.hpp"
#include "localsearch/sim/run.hpp"
#include "localsearch/transpile/coupling_map.hpp"

namespace localsearch::transpile {

/// physical[q] is the physical qubit holding logical qubit q.
struct Layout {
    std::vector<int> physical;

    int size() const { return static_cast<int>(physical.size()); }
    int operator[](int q) const { return physical.at(static_cast<std::size_t>(q)); }

    void validate(int physical_qubits) const {
        std::vector<bool> used(static_cast<std::size_t>(std::max(physical_qubits, 0)), false);
        for (int p : physical) {
            if (p < 0 || p >= physical_qubits) throw InvalidArgument("layout maps outside the device");
            if (used[p]) throw InvalidArgument("layout is not injective");
            used[p] = true;
        }
    }

    friend bool operator==(const Layout&, const Layout&) = default;
};

enum class LayoutStrategy { Trivial, Degree };

inline LayoutStrategy layout_strategy_from_string(std::string_view s) {
    if (s == "trivial") return LayoutStrategy::Trivial;
    if (s == "degree") return LayoutStrategy::Degree;
    throw InvalidArgument("unknown layout strategy '" + std::string(s) + "'");
}

inline std::string_view to_string(LayoutStrategy s) { return s == LayoutStrategy::Trivial ? "trivial" : "degree"; }

inline void check_fits(int logical, const CouplingMap& map) {
    if (logical > map.qubits())
        throw RoutingError("circuit needs " + std::to_string(logical) + " qubits, device has " +
                           std::to_string(map.qubits()));
}

inline Layout trivial_layout(int logical, const CouplingMap& map) {
    check_fits(logical, map);
    Layout l{std::vector<int>(static_cast<std::size_t>(logical))};
    std::iota(l.physical.begin(), l.physical.end(), 0);
    return l;
}

/// Busiest logical qubits onto a well-connected, connected patch of the device.
inline Layout degree_layout(const circuit::Circuit& c, const CouplingMap& map) {
    const int n = c.total_qubits();
    check_fits(n, map);
    std::vector<std::int64_t> load(static_cast<std::size_t>(n), 0);
    for (const auto& g : c.gates())
        if (g.operands.size() >= 2)
            for (int q : g.operands) ++load[q];

    // grow the patch from the highest-degree qubit
    std::vector<int> patch;
    std::vector<bool> in(static_cast<std::size_t>(map.qubits()), false);
    int seed = 0;
    for (int p = 1; p < map.qubits(); ++p)
        if (map.degree(p) > map.degree(seed)) seed = p;
    patch.push_back(seed);
    in[seed] = true;
    while (static_cast<int>(patch.size()) < n) {
        int best = -1, best_links = -1;
        for (int p = 0; p < map.qubits(); ++p) {
            if (in[p]) continue;
            int links = 0;
            for (int v : map.neighbors(p)) links += in[v] ? 1 : 0;
            if (links == 0) continue;
            if (links > best_links || (links == best_links && map.degree(p) > map.degree(best))) {
                best = p;
                best_links = links;
            }
        }
        patch.push_back(best);
        in[best] = true;
    }
    auto inner_degree = [&](int p) {
        int d = 0;
        for (int v : map.neighbors(p)) d += in[v] ? 1 : 0;
        return d;
    };
    std::stable_sort(patch.begin(), patch.end(), [&](int a, int b) { return inner_degree(a) > inner_degree(b); });

    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return load[a] > load[b]; });
    Layout l{std::vector<int>(static_cast<std::size_t>(n))};
    for (int i = 0; i < n; ++i) l.physical[order[i]] = patch[i];
    return l;
}

inline Layout make_layout(LayoutStrategy s, const circuit::Circuit& c, const CouplingMap& map) {
    return s == LayoutStrategy::Trivial ? trivial_layout(c.total_qubits(), map) : degree_layout(c, map);
}

struct RouteResult {
    circuit::Circuit circuit;  // on physical qubits
    Layout initial;
    Layout final_layout;
    std::int64_t swaps{0};
};

inline constexpr int kLookahead = 5;

inline RouteResult route(const circuit::Circuit& c, const CouplingMap& map, const Layout& initial) {
    if (!c.is_lowered()) throw InvalidArgument("routing needs a circuit lowered to 1-qubit gates and CNOTs");
    const int n = c.total_qubits();
    check_fits(n, map);
    if (initial.size() != n) throw InvalidArgument("layout size does not match the circuit");
    initial.validate(map.qubits());

    std::vector<int> l2p = initial.physical;
    std::vector<int> p2l(static_cast<std::size_t>(map.qubits()), -1);
    for (int q = 0; q < n; ++q) p2l[l2p[q]] = q;

    RouteResult r{circuit::Circuit(map.qubits()), initial, {}, 0};
    const auto gates = c.gates();
    std::vector<std::size_t> two_qubit;
    for (std::size_t i = 0; i < gates.size(); ++i)
        if (gates[i].kind == circuit::GateKind::CNOT) two_qubit.push_back(i);
    std::size_t next2 = 0;  // index into two_qubit of the current-or-next CNOT

    auto do_swap = [&](int pa, int pb) {
        r.circuit.add(circuit::Gate::cnot(pa, pb));
        r.circuit.add(circuit::Gate::cnot(pb, pa));
        r.circuit.add(circuit::Gate::cnot(pa, pb));
        const int la = p2l[pa], lb = p2l[pb];
        p2l[pa] = lb;
        p2l[pb] = la;
        if (la >= 0) l2p[la] = pb;
        if (lb >= 0) l2p[lb] = pa;
        ++r.swaps;
    };
    // distance cost of a layout after a hypothetical swap
    auto cost_after = [&](int pa, int pb) {
        auto where = [&](int q) {
            const int p = l2p[q];
            return p == pa ? pb : p == pb ? pa : p;
        };
        double cost = 0.0, w = 1.0;
        for (std::size_t k = next2; k < two_qubit.size() && k <= next2 + kLookahead; ++k) {
            const auto& g = gates[two_qubit[k]];
            cost += w * map.distance(where(g.operands[0]), where(g.operands[1]));
            w = 0.5;
        }
        return cost;
    };

    for (std::size_t i = 0; i < gates.size(); ++i) {
        const auto& g = gates[i];
        if (g.kind != circuit::GateKind::CNOT) {
            auto m = g;
            for (auto& q : m.operands) q = l2p[q];
            r.circuit.add(std::move(m));
            continue;
        }
        const int lc = g.operands[0], lt = g.operands[1];
        while (!map.adjacent(l2p[lc], l2p[lt])) {
            const int pc = l2p[lc], pt = l2p[lt];
            const int d = map.distance(pc, pt);
            int best_a = -1, best_b = -1;
            double best = 0.0;
            for (auto [from, to] : {std::pair{pc, pt}, std::pair{pt, pc}})
                for (int v : map.neighbors(from)) {
                    if (map.distance(v, to) != d - 1) continue;
                    const double cost = cost_after(from, v);
                    if (best_a < 0 || cost < best) {
                        best = cost;
                        best_a = from;
                        best_b = v;
                    }
                }
            do_swap(best_a, best_b);
        }
        r.circuit.add(circuit::Gate::cnot(l2p[lc], l2p[lt]));
        ++next2;
    }
    r.final_layout = Layout{l2p};
    return r;
}

inline RouteResult route(const circuit::Circuit& c, const CouplingMap& map, LayoutStrategy s = LayoutStrategy::Trivial) {
    return route(c, map, make_layout(s, c, map));
}

inline constexpr int kMaxVerifyQubits = 12;

namespace detail {
/// Places an n-qubit logical state onto `physical` qubits through `layout`; spare qubits are |0>.
inline sim::StateVector embed(const sim::StateVector& s, const Layout& layout, int physical) {
    std::vector<sim::Amplitude> amps(std::size_t{1} << physical, sim::Amplitude{0.0, 0.0});
    const int n = s.qubits();
    for (BasisIndex i = 0; i < s.dimension(); ++i) {
        BasisIndex j = 0;
        for (int q = 0; q < n; ++q)
            if ((i >> (n - 1 - q)) & 1U) j |= BasisIndex{1} << (physical - 1 - layout[q]);
        amps[j] = s[i];
    }
    return sim::StateVector(physical, std::move(amps));
}
}  // namespace detail

/// Compares the routed circuit against the original on random inputs over
/// every logical qubit (ancillas included), tracking the layout change.
inline bool verify_equivalence(const circuit::Circuit& original, const RouteResult& routed, int trials = 20,
                               std::uint64_t seed = 20211, double tol = 1e-9) {
    const int n = original.total_qubits(), p = routed.circuit.total_qubits();
    if (std::max(n, p) > kMaxVerifyQubits)
        throw ResourceCapExceeded("equivalence check is limited to " + std::to_string(kMaxVerifyQubits) + " qubits");
    Rng rng(seed);
    for (int t = 0; t < trials; ++t) {
        const auto input = sim::StateVector::random(n, rng);
        auto expected = input;
        sim::apply_circuit(expected, original);
        auto actual = detail::embed(input, routed.initial, p);
        sim::apply_circuit(actual, routed.circuit);
        const auto want = detail::embed(expected, routed.final_layout, p);
        for (BasisIndex i = 0; i < want.dimension(); ++i)
            if (std::abs(want[i] - actual[i]) > tol) return false;
    }
    return true;
}

/// #CNOT' and Depth' of a routed circuit.
inline circuit::CostEstimate mapped_metrics(const circuit::Circuit& routed) {
    return {circuit::cnot_count(routed), circuit::depth(routed)};
}

inline bool respects(const circuit::Circuit& c, const CouplingMap& map) {
    for (const auto& g : c.gates())
        if (g.operands.size() >= 2 && (g.kind != circuit::GateKind::CNOT || !map.adjacent(g.operands[0], g.operands[1])))
            return false;
    return true;
}

}  // namespace localsearch::transpile

#pragma once

#include <algorithm>
#include <charconv>
#include <limits>
#include <queue>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "localsearch/errors.hpp"

namespace localsearch::transpile {

/// Undirected device connectivity. CNOTs may run either way along an edge.
class CouplingMap {
public:
    CouplingMap(int qubits, std::vector<std::pair<int, int>> edges) : qubits_(qubits) {
        if (qubits < 1) throw InvalidArgument("coupling map needs at least one qubit");
        std::set<std::pair<int, int>> uniq;
        for (auto [a, b] : edges) {
            if (a < 0 || b < 0 || a >= qubits || b >= qubits)
                throw InvalidArgument("edge (" + std::to_string(a) + "," + std::to_string(b) + ") out of range");
            if (a == b) throw InvalidArgument("self-loop on qubit " + std::to_string(a));
            uniq.insert(std::minmax(a, b));
        }
        edges_.assign(uniq.begin(), uniq.end());
        adj_.resize(static_cast<std::size_t>(qubits));
        for (auto [a, b] : edges_) {
            adj_[a].push_back(b);
            adj_[b].push_back(a);
        }
        for (auto& v : adj_) std::sort(v.begin(), v.end());
        dist_.assign(static_cast<std::size_t>(qubits), std::vector<int>(static_cast<std::size_t>(qubits), -1));
        for (int s = 0; s < qubits; ++s) {
            auto& d = dist_[s];
            std::queue<int> q;
            d[s] = 0;
            q.push(s);
            while (!q.empty()) {
                const int u = q.front();
                q.pop();
                for (int v : adj_[u])
                    if (d[v] < 0) {
                        d[v] = d[u] + 1;
                        q.push(v);
                    }
            }
            for (int v = 0; v < qubits; ++v)
                if (d[v] < 0) throw RoutingError("coupling map is disconnected");
        }
    }

    int qubits() const noexcept { return qubits_; }
    const std::vector<std::pair<int, int>>& edges() const noexcept { return edges_; }
    const std::vector<int>& neighbors(int q) const { return adj_.at(static_cast<std::size_t>(q)); }
    int degree(int q) const { return static_cast<int>(neighbors(q).size()); }
    int distance(int a, int b) const { return dist_.at(static_cast<std::size_t>(a)).at(static_cast<std::size_t>(b)); }
    bool adjacent(int a, int b) const { return distance(a, b) == 1; }

    /// One shortest path from a to b, inclusive; ties go to the lowest-numbered neighbor.
    std::vector<int> shortest_path(int a, int b) const {
        std::vector<int> path{a};
        while (path.back() != b) {
            for (int v : neighbors(path.back()))
                if (distance(v, b) == distance(path.back(), b) - 1) {
                    path.push_back(v);
                    break;
                }
        }
        return path;
    }

    friend bool operator==(const CouplingMap& a, const CouplingMap& b) {
        return a.qubits_ == b.qubits_ && a.edges_ == b.edges_;
    }

private:
    int qubits_;
    std::vector<std::pair<int, int>> edges_;
    std::vector<std::vector<int>> adj_;
    std::vector<std::vector<int>> dist_;
};

inline CouplingMap line_map(int k) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i + 1 < k; ++i) e.emplace_back(i, i + 1);
    return {k, e};
}

inline CouplingMap ring_map(int k) {
    if (k < 3) return line_map(k);
    auto e = line_map(k).edges();
    e.emplace_back(0, k - 1);
    return {k, e};
}

inline CouplingMap full_map(int k) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) e.emplace_back(i, j);
    return {k, e};
}

inline CouplingMap grid_map(int rows, int cols) {
    if (rows < 1 || cols < 1) throw InvalidArgument("grid dimensions must be positive");
    std::vector<std::pair<int, int>> e;
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            const int q = r * cols + c;
            if (c + 1 < cols) e.emplace_back(q, q + 1);
            if (r + 1 < rows) e.emplace_back(q, q + cols);
        }
    return {rows * cols, e};
}

// 7-qubit H: 0-1-2 across the top, 1-3-5 down the middle, 4-5-6 across the bottom.
inline CouplingMap casablanca_map() { return {7, {{0, 1}, {1, 2}, {1, 3}, {3, 5}, {4, 5}, {5, 6}}}; }

inline nlohmann::json to_json(const CouplingMap& m) {
    nlohmann::json edges = nlohmann::json::array();
    for (auto [a, b] : m.edges()) edges.push_back({a, b});
    return {{"qubits", m.qubits()}, {"edges", edges}};
}

inline CouplingMap coupling_from_json(const nlohmann::json& j) {
    try {
        std::vector<std::pair<int, int>> e;
        for (const auto& x : j.at("edges")) {
            if (!x.is_array() || x.size() != 2) throw InvalidArgument("each edge must be a pair");
            e.emplace_back(x[0].get<int>(), x[1].get<int>());
        }
        return {j.at("qubits").get<int>(), e};
    } catch (const nlohmann::json::exception& ex) {
        throw InvalidArgument(std::string("malformed coupling map: ") + ex.what());
    }
}

namespace detail {
inline int parse_positive(std::string_view s) {
    int v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size() || v < 1) throw InvalidArgument("bad size '" + std::string(s) + "'");
    return v;
}
}  // namespace detail

/// "casablanca", "line:K", "ring:K", "full:K", "grid:RxC".
inline CouplingMap coupling_by_name(std::string_view spec) {
    if (spec == "casablanca" || spec == "ibmq_casablanca") return casablanca_map();
    const auto colon = spec.find(':');
    if (colon == std::string_view::npos) throw InvalidArgument("unknown topology '" + std::string(spec) + "'");
    const auto kind = spec.substr(0, colon), arg = spec.substr(colon + 1);
    if (kind == "line") return line_map(detail::parse_positive(arg));
    if (kind == "ring") return ring_map(detail::parse_positive(arg));
    if (kind == "full") return full_map(detail::parse_positive(arg));
    if (kind == "grid") {
        const auto x = arg.find('x');
        if (x == std::string_view::npos) throw InvalidArgument("grid needs RxC");
        return grid_map(detail::parse_positive(arg.substr(0, x)), detail::parse_positive(arg.substr(x + 1)));
    }
    throw InvalidArgument("unknown topology '" + std::string(spec) + "'");
}

}  // namespace localsearch::transpile

#pragma once

#include <cmath>
#include <complex>
#include <cstdlib>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "localsearch/bitstring.hpp"
#include "localsearch/errors.hpp"
#include "localsearch/rng.hpp"

namespace localsearch::sim {

using Amplitude = std::complex<double>;

inline constexpr int kDefaultMaxQubits = 24;

/// Dense-simulation cap; LOCALSEARCH_MAX_QUBITS overrides the default of 24.
inline int max_dense_qubits() {
    if (const char* env = std::getenv("LOCALSEARCH_MAX_QUBITS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 1 && v <= 40) return static_cast<int>(v);
    }
    return kDefaultMaxQubits;
}

inline void check_dense_width(int n) {
    if (n < 1) throw InvalidArgument("state needs at least one qubit");
    if (n > max_dense_qubits()) {
        throw ResourceCapExceeded(std::to_string(n) + " qubits exceeds the dense simulator cap of " +
                                  std::to_string(max_dense_qubits()));
    }
}

class StateVector {
public:
    /// |0...0> on n qubits.
    explicit StateVector(int n) : n_(n) {
        check_dense_width(n);
        amps_.assign(std::size_t{1} << n, Amplitude{});
        amps_[0] = 1.0;
    }

    StateVector(int n, std::vector<Amplitude> amplitudes) : n_(n), amps_(std::move(amplitudes)) {
        check_dense_width(n);
        if (amps_.size() != (std::size_t{1} << n)) throw InvalidArgument("amplitude count does not match 2^n");
    }

    static StateVector basis(int n, BasisIndex index) {
        StateVector s(n);
        if (index > full_mask(n)) throw InvalidArgument("basis index out of range");
        s.amps_[0] = 0.0;
        s.amps_[index] = 1.0;
        return s;
    }

    static StateVector uniform(int n) {
        check_dense_width(n);
        const double a = std::exp2(-0.5 * n);
        return StateVector(n, std::vector<Amplitude>(std::size_t{1} << n, Amplitude{a, 0.0}));
    }

    /// Haar-like random state from normalized complex Gaussians.
    static StateVector random(int n, Rng& rng) {
        check_dense_width(n);
        std::vector<Amplitude> a(std::size_t{1} << n);
        double norm2 = 0.0;
        for (auto& x : a) {
            // Box-Muller on the portable uniform stream.
            const double u1 = 1.0 - rng.uniform();
            const double u2 = rng.uniform();
            const double r = std::sqrt(-2.0 * std::log(u1));
            x = {r * std::cos(2 * M_PI * u2), r * std::sin(2 * M_PI * u2)};
            norm2 += std::norm(x);
        }
        const double inv = 1.0 / std::sqrt(norm2);
        for (auto& x : a) x *= inv;
        return StateVector(n, std::move(a));
    }

    int qubits() const noexcept { return n_; }
    std::size_t dimension() const noexcept { return amps_.size(); }
    std::vector<Amplitude>& amplitudes() noexcept { return amps_; }
    const std::vector<Amplitude>& amplitudes() const noexcept { return amps_; }
    Amplitude& operator[](BasisIndex i) { return amps_[i]; }
    const Amplitude& operator[](BasisIndex i) const { return amps_[i]; }

    double probability(BasisIndex i) const { return std::norm(amps_.at(i)); }

    double norm_squared() const {
        double s = 0.0;
        for (const auto& a : amps_) s += std::norm(a);
        return s;
    }

    std::vector<double> probabilities() const {
        std::vector<double> p(amps_.size());
        for (std::size_t i = 0; i < amps_.size(); ++i) p[i] = std::norm(amps_[i]);
        return p;
    }

private:
    int n_;
    std::vector<Amplitude> amps_;
};

/// State dump: a JSON array of [re, im] pairs in basis-index order.
inline nlohmann::json to_json(const StateVector& s) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& a : s.amplitudes()) out.push_back({a.real(), a.imag()});
    return out;
}

inline StateVector state_from_json(const nlohmann::json& j) {
    std::vector<Amplitude> amps;
    for (const auto& pair : j) amps.emplace_back(pair.at(0).get<double>(), pair.at(1).get<double>());
    int n = 0;
    while ((std::size_t{1} << n) < amps.size()) ++n;
    return StateVector(n, std::move(amps));
}

}  // namespace localsearch::sim

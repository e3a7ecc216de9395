#pragma once

// Monte Carlo Pauli noise: one state-vector trajectory per shot.
//
// After each 1q gate a random non-identity Pauli hits its qubit with
// probability p1; after each CNOT one of the 15 non-identity two-qubit Paulis
// hits its pair with probability p2. Only the data register is measured, then
// every measured bit flips with probability readout_flip.
//
// Shot s draws from its own generator seeded with mix_seed(seed, s), so a
// histogram depends only on (circuit, noise, shots, seed). Trajectories share
// the error-free prefix: ideal checkpoints are kept every few gates and a
// trajectory replays from the checkpoint before its first error.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "localsearch/circuit/circuit.hpp"
#include "localsearch/rng.hpp"
#include "localsearch/sim/kernels.hpp"
#include "localsearch/sim/run.hpp"
#include "localsearch/sim/sampling.hpp"

namespace localsearch::sim {

struct NoiseModel {
    double p1{0.0};
    double p2{0.0};
    double readout_flip{0.0};

    void validate() const {
        auto ok = [](double p) { return p >= 0.0 && p <= 1.0; };
        if (!ok(p1) || !ok(p2) || !ok(readout_flip)) throw InvalidArgument("noise probabilities must lie in [0, 1]");
    }

    bool is_ideal() const { return p1 == 0.0 && p2 == 0.0 && readout_flip == 0.0; }
};

namespace detail {

// 0 = I, 1 = X, 2 = Y, 3 = Z
inline void apply_pauli(StateVector& s, int q, std::uint64_t which) {
    switch (which) {
        case 1: apply_x(s, q); break;
        case 2: apply_y(s, q); break;
        case 3: apply_z(s, q); break;
        default: break;
    }
}

struct ErrorEvent {
    std::size_t after_gate;
    int q0;
    int q1;                // -1 for single-qubit events
    std::uint64_t paulis;  // 1..3 (1q) or 1..15 (2q), two base-4 digits
};

// Walks the gate list once with the shot's generator, recording faults.
inline std::vector<ErrorEvent> draw_errors(const circuit::Circuit& c, const NoiseModel& noise, Rng& rng) {
    std::vector<ErrorEvent> events;
    const auto gates = c.gates();
    for (std::size_t i = 0; i < gates.size(); ++i) {
        const auto& g = gates[i];
        if (g.kind == circuit::GateKind::CNOT) {
            if (rng.bernoulli(noise.p2)) events.push_back({i, g.operands[0], g.operands[1], 1 + rng.below(15)});
        } else if (rng.bernoulli(noise.p1)) {
            events.push_back({i, g.operands[0], -1, 1 + rng.below(3)});
        }
    }
    return events;
}

}  // namespace detail

/// Measurement histogram of a lowered circuit started from |0...0>.
inline Histogram run_noisy(const circuit::Circuit& c, const NoiseModel& noise, std::uint64_t shots, std::uint64_t seed) {
    noise.validate();
    if (shots < 1) throw InvalidArgument("shots must be at least 1");
    if (!c.is_lowered()) throw InvalidArgument("run_noisy needs a lowered circuit (1q gates and CNOT only)");

    const int total = c.total_qubits();
    const int anc = c.ancilla_count();
    const auto gates = c.gates();

    // Ideal checkpoints: state before gate i * stride.
    const std::size_t stride = std::max<std::size_t>(1, static_cast<std::size_t>(std::sqrt(static_cast<double>(gates.size()))));
    std::vector<StateVector> checkpoints;
    StateVector ideal(total);
    for (std::size_t i = 0; i < gates.size(); ++i) {
        if (i % stride == 0) checkpoints.push_back(ideal);
        apply_gate(ideal, gates[i]);
    }
    auto marginal = [&](const StateVector& s) {
        std::vector<double> p(std::size_t{1} << c.width(), 0.0);
        for (BasisIndex i = 0; i < s.dimension(); ++i) p[i >> anc] += std::norm(s[i]);
        return p;
    };
    const Sampler ideal_sampler(marginal(ideal));

    Histogram h{c.width(), 0, {}};
    std::vector<std::uint64_t> tally(std::size_t{1} << c.width(), 0);
    for (std::uint64_t shot = 0; shot < shots; ++shot) {
        Rng rng(mix_seed(seed, shot));
        const auto events = detail::draw_errors(c, noise, rng);
        BasisIndex outcome;
        if (events.empty()) {
            outcome = ideal_sampler.draw(rng);
        } else {
            const std::size_t first = events.front().after_gate;
            StateVector s = checkpoints[first / stride];
            std::size_t next_event = 0;
            for (std::size_t i = (first / stride) * stride; i < gates.size(); ++i) {
                apply_gate(s, gates[i]);
                for (; next_event < events.size() && events[next_event].after_gate == i; ++next_event) {
                    const auto& e = events[next_event];
                    detail::apply_pauli(s, e.q0, e.q1 < 0 ? e.paulis : e.paulis / 4);
                    if (e.q1 >= 0) detail::apply_pauli(s, e.q1, e.paulis % 4);
                }
            }
            outcome = Sampler(marginal(s)).draw(rng);
        }
        if (noise.readout_flip > 0.0) {
            for (int q = 0; q < c.width(); ++q)
                if (rng.bernoulli(noise.readout_flip)) outcome ^= qubit_mask(c.width(), q);
        }
        ++tally[outcome];
    }
    for (BasisIndex i = 0; i < tally.size(); ++i)
        if (tally[i] != 0) h.add(i, tally[i]);
    return h;
}

}  // namespace localsearch::sim

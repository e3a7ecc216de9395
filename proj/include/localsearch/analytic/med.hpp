#pragma once

// Minimum expected depth: min over j of d_total(j) / P(j), where j counts
// oracle calls and d_total sums the cost model's oracle and diffusion depths.
//
//   grover     j x (oracle + global diffusion), P = sin^2((2j+1) theta)
//   efficient  alternating local diffusions of width m and n - m, one per
//              call, P from the four-class model
//   partial    best L^x G^y L^z sequence (L = local on the first m qubits),
//              P from the state vector

#include <cstdint>
#include <limits>
#include <optional>
#include <string>

#include "localsearch/algorithms/search.hpp"
#include "localsearch/analytic/model.hpp"
#include "localsearch/analytic/plan.hpp"
#include "localsearch/circuit/cost_model.hpp"
#include "localsearch/sim/kernels.hpp"

namespace localsearch::analytic {

struct MedResult {
    std::int64_t j_star{0};
    std::int64_t d_total{0};
    double probability{0.0};
    double med{std::numeric_limits<double>::infinity()};
    std::string shape;  // partial search only, e.g. "L2G1L1"

    void offer(std::int64_t j, std::int64_t d, double p, std::string s = {}) {
        if (p <= 0.0) return;
        const double v = static_cast<double>(d) / p;
        if (v < med) {
            med = v;
            j_star = j;
            d_total = d;
            probability = p;
            shape = std::move(s);
        }
    }
};

/// Default search horizon in oracle calls: a little past the Grover optimum.
inline std::int64_t default_max_j(algorithms::Variant algo, int n) {
    const auto base = static_cast<std::int64_t>(std::numbers::pi / 4 * std::exp2(n / 2.0)) + 3;
    return algo == algorithms::Variant::Efficient ? 2 * base : base + 2;
}

inline int default_med_m(algorithms::Variant algo, int n) {
    switch (algo) {
        case algorithms::Variant::Efficient: return n / 2;
        case algorithms::Variant::Partial: return algorithms::default_partial_m(n);
        default: return n;
    }
}

inline MedResult med(algorithms::Variant algo, int n, std::optional<int> m_opt, const circuit::CostModel& model,
                     std::int64_t max_j) {
    if (max_j < 1) throw InvalidArgument("max_j must be at least 1");
    model.validate();
    MedResult best;
    const auto d_o = model.oracle_depth(n);
    switch (algo) {
        case algorithms::Variant::Grover: {
            const auto per = d_o + model.diffusion_depth(n);
            for (std::int64_t j = 1; j <= max_j; ++j)
                best.offer(j, j * per, grover_probability(n, static_cast<std::uint64_t>(j)));
            break;
        }
        case algorithms::Variant::Efficient: {
            const int m = m_opt.value_or(default_med_m(algo, n));
            CallStepper s(n, m, 1, 1);
            std::int64_t d = 0;
            for (std::int64_t j = 1; j <= max_j; ++j) {
                d += d_o + model.diffusion_depth(s.next_is_m() ? m : n - m);
                s.step();
                best.offer(j, d, static_cast<double>(s.state().probability()));
            }
            break;
        }
        case algorithms::Variant::Partial: {
            const int w = m_opt.value_or(default_med_m(algo, n));
            if (w < 1 || w >= n) throw InvalidArgument("partial search needs 1 <= m < n");
            const BasisIndex target = 0;  // probabilities do not depend on the target
            const std::vector<BasisIndex> t{target};
            const auto local = algorithms::qubit_range(0, w);
            const auto global = circuit::all_qubits(n);
            auto step = [&](sim::StateVector& v, const std::vector<int>& subset) {
                sim::apply_oracle_fast(v, t);
                sim::apply_local_diffusion_fast(v, subset);
            };
            const auto d_l = d_o + model.diffusion_depth(w);
            const auto d_g = d_o + model.diffusion_depth(n);
            auto vx = sim::StateVector::uniform(n);
            for (std::int64_t x = 0; x <= max_j; ++x) {
                if (x > 0) step(vx, local);
                auto vy = vx;
                for (std::int64_t y = 0; x + y <= max_j; ++y) {
                    if (y > 0) step(vy, global);
                    auto vz = vy;
                    for (std::int64_t z = 0; x + y + z <= max_j; ++z) {
                        if (z > 0) step(vz, local);
                        const auto j = x + y + z;
                        if (j == 0) continue;
                        best.offer(j, (x + z) * d_l + y * d_g, vz.probability(target),
                                   "L" + std::to_string(x) + "G" + std::to_string(y) + "L" + std::to_string(z));
                    }
                }
            }
            break;
        }
    }
    if (best.j_star == 0) throw InvalidArgument("success probability is zero for every j <= max_j");
    return best;
}

}  // namespace localsearch::analytic

#pragma once

#include <cstdint>

#include "localsearch/algorithms/search.hpp"
#include "localsearch/circuit/lowering.hpp"
#include "localsearch/circuit/metrics.hpp"
#include "localsearch/sim/noise.hpp"
#include "localsearch/sim/sampling.hpp"

namespace localsearch::algorithms {

struct ExecOptions {
    std::uint64_t shots{0};  // 0: no sampling, no histogram
    std::uint64_t seed{1};
    sim::NoiseModel noise{};
    circuit::CostModel model{circuit::CostModel::defaults()};
};

/// Ideal probability from the fast path, gate metrics from the lowered
/// circuit, and optionally a (noisy) measurement histogram.
inline RunReport execute(const SearchSpec& spec, const ExecOptions& opt = {}) {
    const auto steps = sequence_for(spec);
    const auto targets = spec.target_indices();
    const auto state = run_fast(spec.n, targets, steps);

    RunReport r;
    r.success_probability = success_probability(state, targets);
    r.oracle_calls = oracle_calls(steps);

    const auto abstract = to_circuit(spec.n, targets, steps);
    const auto est = circuit::estimate_cost(abstract, opt.model);
    r.model_cnots = est.cnots;
    r.model_depth = est.depth;
    const auto lowered = circuit::lower(abstract, opt.model);
    r.cnots = circuit::cnot_count(lowered);
    r.depth = circuit::depth(lowered);

    if (opt.shots > 0) {
        r.histogram = opt.noise.is_ideal() ? sim::sample(state, opt.shots, opt.seed)
                                           : sim::run_noisy(lowered, opt.noise, opt.shots, opt.seed);
        r.ist = ist(*r.histogram, spec.targets);
        std::uint64_t hits = 0;
        for (const auto& t : spec.targets) hits += r.histogram->count(t);
        r.observed_success = static_cast<double>(hits) / static_cast<double>(r.histogram->shots);
    }
    return r;
}

}  // namespace localsearch::algorithms

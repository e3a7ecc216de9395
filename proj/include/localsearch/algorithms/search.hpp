#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "localsearch/algorithms/sequence.hpp"
#include "localsearch/analytic/plan.hpp"
#include "localsearch/circuit/builders.hpp"
#include "localsearch/circuit/circuit.hpp"
#include "localsearch/circuit/metrics.hpp"
#include "localsearch/sim/kernels.hpp"
#include "localsearch/sim/sampling.hpp"

namespace localsearch::algorithms {

enum class Variant { Grover, Partial, Efficient };

inline std::string_view to_string(Variant v) {
    switch (v) {
        case Variant::Grover: return "grover";
        case Variant::Partial: return "partial";
        case Variant::Efficient: return "efficient";
    }
    return "?";
}

inline Variant variant_from_string(std::string_view s) {
    if (s == "grover") return Variant::Grover;
    if (s == "partial") return Variant::Partial;
    if (s == "efficient") return Variant::Efficient;
    throw InvalidArgument("unknown algorithm '" + std::string(s) + "'");
}

/// Declarative description of one search run. Explicit `steps` override the
/// variant's generated sequence.
struct SearchSpec {
    Variant variant{Variant::Grover};
    int n{0};
    std::optional<int> m;
    std::vector<std::string> targets;  // n-bit strings, qubit 0 first
    int k1{1};
    int k2{1};
    int k{1};
    Tail tail{Tail::None};
    bool swap{false};
    std::string pattern{"LGL"};  // partial search: L = local on first m, G = global
    std::optional<std::string> preset;
    std::vector<Step> steps;

    std::vector<BasisIndex> target_indices() const {
        return circuit::parse_targets(std::span<const std::string>(targets), n);
    }
};

inline std::vector<PatternItem> parse_pattern(std::string_view p) {
    std::vector<PatternItem> out;
    for (char c : p) {
        if (c == 'L' || c == 'l') out.push_back(PatternItem::Local);
        else if (c == 'G' || c == 'g') out.push_back(PatternItem::Global);
        else throw InvalidArgument("pattern may only contain L and G");
    }
    return out;
}

/// The partition size actually used: explicit m, or the variant's default.
inline int effective_m(const SearchSpec& s) {
    if (s.m) return *s.m;
    if (s.variant == Variant::Partial) {
        if (s.preset == "paper-4q") return 2;
        if (s.preset == "paper-6q") return 4;
        return default_partial_m(s.n);
    }
    if (s.variant == Variant::Efficient) return s.n / 2;
    return s.n;
}

/// Validates the spec and returns its step sequence.
inline Sequence sequence_for(const SearchSpec& s) {
    if (s.n < 1 || s.n > kMaxIndexBits) throw InvalidArgument("n out of range");
    if (s.targets.empty()) throw InvalidArgument("at least one target is required");
    (void)s.target_indices();
    if (!s.steps.empty()) {
        validate_sequence(s.n, s.steps);
        return s.steps;
    }
    switch (s.variant) {
        case Variant::Grover: return grover_sequence(s.n, s.k);
        case Variant::Partial:
            if (s.preset) return partial_preset(*s.preset, s.n);
            return partial_sequence(s.n, effective_m(s), parse_pattern(s.pattern));
        case Variant::Efficient:
            if (s.n < 2) throw InvalidArgument("efficient search needs n >= 2");
            return efficient_sequence(s.n, effective_m(s), s.k1, s.k2, s.k, s.tail, s.swap);
    }
    return {};
}

inline std::int64_t oracle_calls(const Sequence& steps) { return static_cast<std::int64_t>(steps.size()); }

enum class OracleForm { Opaque, Expanded };

/// Preparation, then per step the oracle and the step's diffusion.
inline circuit::Circuit to_circuit(int n, std::span<const BasisIndex> targets, const Sequence& steps,
                                   OracleForm form = OracleForm::Opaque) {
    auto c = circuit::build_uniform_preparation(n);
    for (const auto& step : steps) {
        if (form == OracleForm::Opaque) {
            c.add(circuit::oracle_gate(n, targets));
        } else {
            c.append(circuit::build_oracle(n, targets));
        }
        c.append(circuit::build_local_diffusion(n, step.subset));
    }
    return c;
}

inline circuit::Circuit to_circuit(const SearchSpec& s, OracleForm form = OracleForm::Opaque) {
    const auto t = s.target_indices();
    return to_circuit(s.n, t, sequence_for(s), form);
}

/// Amplitude-space execution of a step sequence from the uniform state.
inline sim::StateVector run_fast(int n, std::span<const BasisIndex> targets, const Sequence& steps) {
    auto s = sim::StateVector::uniform(n);
    for (const auto& step : steps) {
        sim::apply_oracle_fast(s, targets);
        sim::apply_local_diffusion_fast(s, step.subset);
    }
    return s;
}

inline sim::StateVector run_fast(const SearchSpec& s) {
    const auto t = s.target_indices();
    return run_fast(s.n, t, sequence_for(s));
}

inline double success_probability(const sim::StateVector& s, std::span<const BasisIndex> targets) {
    double p = 0.0;
    for (auto t : targets) p += s.probability(t);
    return p;
}

/// count(target) / max count over wrong answers; +inf if no wrong answer was
/// observed, 0 if the target never was.
inline double ist(const sim::Histogram& h, const std::vector<std::string>& targets) {
    if (h.shots < 1) throw InvalidArgument("IST needs at least one shot");
    std::uint64_t right = 0, worst_wrong = 0;
    for (const auto& [bits, c] : h.counts) {
        if (std::find(targets.begin(), targets.end(), bits) != targets.end()) {
            right += c;
        } else {
            worst_wrong = std::max(worst_wrong, c);
        }
    }
    if (worst_wrong == 0) return std::numeric_limits<double>::infinity();
    return static_cast<double>(right) / static_cast<double>(worst_wrong);
}

inline double ist(const sim::Histogram& h, const std::string& target) { return ist(h, std::vector<std::string>{target}); }

struct RunReport {
    double success_probability{0.0};
    std::optional<double> ist;
    std::optional<sim::Histogram> histogram;
    std::int64_t oracle_calls{0};
    std::int64_t cnots{0};           // structurally lowered circuit
    std::int64_t depth{0};
    std::int64_t model_cnots{0};     // oracle charged as an opaque block
    std::int64_t model_depth{0};
    std::optional<double> observed_success;  // target frequency in the histogram
};

inline nlohmann::json to_json(const RunReport& r) {
    nlohmann::json j{{"success_probability", r.success_probability},
                     {"oracle_calls", r.oracle_calls},
                     {"cnots", r.cnots},
                     {"depth", r.depth},
                     {"model_cnots", r.model_cnots},
                     {"model_depth", r.model_depth}};
    if (r.ist) j["ist"] = std::isinf(*r.ist) ? nlohmann::json("inf") : nlohmann::json(*r.ist);
    if (r.observed_success) j["observed_success"] = *r.observed_success;
    if (r.histogram) j["shots"] = r.histogram->shots;
    return j;
}

inline nlohmann::json to_json(const SearchSpec& s) {
    nlohmann::json j{{"variant", std::string(to_string(s.variant))},
                     {"n", s.n},
                     {"target", s.targets.size() == 1 ? nlohmann::json(s.targets[0]) : nlohmann::json(s.targets)},
                     {"k1", s.k1},
                     {"k2", s.k2},
                     {"k", s.k},
                     {"tail", std::string(to_string(s.tail))},
                     {"swap", s.swap},
                     {"pattern", s.pattern}};
    if (s.m) j["m"] = *s.m;
    if (s.preset) j["preset"] = *s.preset;
    if (!s.steps.empty()) {
        j["steps"] = nlohmann::json::array();
        for (const auto& st : s.steps) j["steps"].push_back(to_json(st));
    }
    return j;
}

inline SearchSpec search_spec_from_json(const nlohmann::json& j) {
    try {
        SearchSpec s;
        s.variant = variant_from_string(j.at("variant").get<std::string>());
        s.n = j.at("n").get<int>();
        if (j.contains("m")) s.m = j.at("m").get<int>();
        const auto& t = j.at("target");
        if (t.is_array()) {
            s.targets = t.get<std::vector<std::string>>();
        } else {
            s.targets = {t.get<std::string>()};
        }
        s.k1 = j.value("k1", 1);
        s.k2 = j.value("k2", 1);
        s.k = j.value("k", 1);
        s.tail = tail_from_string(j.value("tail", std::string("none")));
        s.swap = j.value("swap", false);
        s.pattern = j.value("pattern", std::string("LGL"));
        if (j.contains("preset")) s.preset = j.at("preset").get<std::string>();
        if (j.contains("steps"))
            for (const auto& st : j.at("steps")) s.steps.push_back(step_from_json(st, s.n));
        (void)sequence_for(s);
        return s;
    } catch (const nlohmann::json::exception& e) {
        throw InvalidArgument(std::string("malformed search spec: ") + e.what());
    }
}

/// Three readings of "the" Grover iteration count.
struct GroverCount {
    std::int64_t literal;                   // floor(pi/(4 theta) - 1), as printed
    std::int64_t argmax;                    // k maximizing sin^2((2k+1) theta) on the first rise
    std::optional<std::uint64_t> threshold; // smallest k reaching the table threshold
};

inline GroverCount grover_iteration_count(int n, double threshold = analytic::kTableThreshold) {
    const auto theta = analytic::grover_theta(n);
    const auto x = std::numbers::pi_v<analytic::Real> / (4 * theta);
    GroverCount g{static_cast<std::int64_t>(std::floor(x - 1)), 0, {}};
    const auto guess = static_cast<std::int64_t>(std::llround(static_cast<double>(x - 0.5L)));
    double best = -1.0;
    for (std::int64_t k = std::max<std::int64_t>(0, guess - 1); k <= guess + 1; ++k) {
        const double p = analytic::grover_probability(n, static_cast<std::uint64_t>(k));
        if (p > best + 1e-15) {
            best = p;
            g.argmax = k;
        }
    }
    g.threshold = analytic::plan_grover(n, threshold).k_total;
    return g;
}

}  // namespace localsearch::algorithms

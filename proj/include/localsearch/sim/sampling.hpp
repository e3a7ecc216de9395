#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "localsearch/bitstring.hpp"
#include "localsearch/rng.hpp"
#include "localsearch/sim/state_vector.hpp"

namespace localsearch::sim {

struct Histogram {
    int qubits{0};
    std::uint64_t shots{0};
    std::map<std::string, std::uint64_t> counts;  // bitstring, qubit 0 first

    void add(BasisIndex outcome, std::uint64_t times = 1) {
        counts[format_bitstring(outcome, qubits)] += times;
        shots += times;
    }

    std::uint64_t count(const std::string& bits) const {
        const auto it = counts.find(bits);
        return it == counts.end() ? 0 : it->second;
    }

    double frequency(const std::string& bits) const {
        return shots == 0 ? 0.0 : static_cast<double>(count(bits)) / static_cast<double>(shots);
    }

    friend bool operator==(const Histogram&, const Histogram&) = default;
};

/// `#shots=N` followed by `bitstring,count` rows in bitstring order.
inline void write_csv(std::ostream& os, const Histogram& h) {
    os << "#shots=" << h.shots << '\n' << "bitstring,count\n";
    for (const auto& [bits, c] : h.counts) os << bits << ',' << c << '\n';
}

inline std::string to_csv(const Histogram& h) {
    std::ostringstream os;
    write_csv(os, h);
    return os.str();
}

/// Inverse-CDF sampler over a fixed distribution.
class Sampler {
public:
    explicit Sampler(const std::vector<double>& weights) : cdf_(weights.size()) {
        double acc = 0.0;
        for (std::size_t i = 0; i < weights.size(); ++i) cdf_[i] = acc += weights[i];
        total_ = acc;
    }

    BasisIndex draw(Rng& rng) const {
        const double u = rng.uniform() * total_;
        auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
        if (it == cdf_.end()) {
            --it;
            while (it != cdf_.begin() && *(it - 1) == *it) --it;
        }
        // upper_bound never lands on a zero-weight entry: it shares its
        // predecessor's cumulative value.
        return static_cast<BasisIndex>(it - cdf_.begin());
    }

private:
    std::vector<double> cdf_;
    double total_{0.0};
};

inline Histogram sample(const StateVector& s, std::uint64_t shots, std::uint64_t seed) {
    if (shots < 1) throw InvalidArgument("shots must be at least 1");
    Histogram h{s.qubits(), 0, {}};
    const Sampler sampler(s.probabilities());
    Rng rng(seed);
    std::vector<std::uint64_t> tally(s.dimension(), 0);
    for (std::uint64_t i = 0; i < shots; ++i) ++tally[sampler.draw(rng)];
    for (BasisIndex i = 0; i < tally.size(); ++i)
        if (tally[i] != 0) h.add(i, tally[i]);
    return h;
}

}  // namespace localsearch::sim

#pragma once

// Bridge between state vectors and the four-class model.

#include <array>
#include <cmath>
#include <span>

#include "localsearch/analytic/model.hpp"
#include "localsearch/bitstring.hpp"
#include "localsearch/sim/state_vector.hpp"

namespace localsearch::analytic {

enum class StateClass { Target = 0, NtM = 1, NtNm = 2, U = 3 };

/// `m_mask` selects the qubits diffused by G_m.
inline StateClass classify(BasisIndex i, BasisIndex target, BasisIndex m_mask) {
    if (i == target) return StateClass::Target;
    if ((i & ~m_mask) == (target & ~m_mask)) return StateClass::NtM;
    if ((i & m_mask) == (target & m_mask)) return StateClass::NtNm;
    return StateClass::U;
}

struct ClassSummary {
    AnalyticState coefficients;        // sum / sqrt(size), real parts
    std::array<double, 4> max_spread;  // max |a_i - mean| within each class
    std::array<double, 4> max_imag;
};

/// Class coefficients of a state; exact for class-symmetric states.
inline ClassSummary summarize(const sim::StateVector& s, BasisIndex target, std::span<const int> m_subset) {
    const int n = s.qubits();
    const BasisIndex mask = qubits_mask(n, m_subset);
    std::array<double, 4> sum{}, count{};
    ClassSummary out{};
    for (BasisIndex i = 0; i < s.dimension(); ++i) {
        const auto c = static_cast<int>(classify(i, target, mask));
        sum[c] += s[i].real();
        count[c] += 1;
        out.max_imag[c] = std::max(out.max_imag[c], std::abs(s[i].imag()));
    }
    for (BasisIndex i = 0; i < s.dimension(); ++i) {
        const auto c = static_cast<int>(classify(i, target, mask));
        out.max_spread[c] = std::max(out.max_spread[c], std::abs(s[i].real() - sum[c] / count[c]));
    }
    auto coef = [&](int c) { return count[c] > 0 ? Real(sum[c]) / std::sqrt(Real(count[c])) : Real(0); };
    out.coefficients = {coef(0), coef(1), coef(2), coef(3)};
    return out;
}

}  // namespace localsearch::analytic

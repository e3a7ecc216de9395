#pragma once

// Reference operators built straight from their definitions, independent of
// the gate builders and kernels under test.

#include <cmath>
#include <complex>
#include <vector>

#include "localsearch/bitstring.hpp"
#include "localsearch/sim/run.hpp"

namespace testsupport {

using localsearch::BasisIndex;
using localsearch::sim::Amplitude;
using localsearch::sim::StateVector;
using localsearch::sim::Unitary;

inline Unitary identity(int n) {
    Unitary u{n, {}};
    const std::size_t dim = std::size_t{1} << n;
    for (std::size_t j = 0; j < dim; ++j) {
        std::vector<Amplitude> col(dim);
        col[j] = 1.0;
        u.columns.push_back(std::move(col));
    }
    return u;
}

/// <i|D_S|j> = 2/2^|S| if i, j agree outside S, minus delta_ij.
inline Unitary reflection_matrix(int n, const std::vector<int>& subset) {
    Unitary u = identity(n);
    const BasisIndex inner = localsearch::qubits_mask(n, subset);
    const double w = 2.0 / static_cast<double>(BasisIndex{1} << subset.size());
    for (BasisIndex j = 0; j < u.columns.size(); ++j)
        for (BasisIndex i = 0; i < u.columns.size(); ++i)
            u.columns[j][i] = ((i & ~inner) == (j & ~inner) ? w : 0.0) - (i == j ? 1.0 : 0.0);
    return u;
}

inline Unitary oracle_matrix(int n, const std::vector<BasisIndex>& targets) {
    Unitary u = identity(n);
    for (auto t : targets) u.columns[t][t] = -1.0;
    return u;
}

/// Permutation matrix of x -> f(x).
template <class F>
Unitary permutation_matrix(int n, F f) {
    Unitary u{n, {}};
    const std::size_t dim = std::size_t{1} << n;
    for (std::size_t j = 0; j < dim; ++j) {
        std::vector<Amplitude> col(dim);
        col[f(static_cast<BasisIndex>(j))] = 1.0;
        u.columns.push_back(std::move(col));
    }
    return u;
}

inline StateVector apply(const Unitary& u, const StateVector& s) {
    std::vector<Amplitude> out(s.dimension());
    for (std::size_t j = 0; j < s.dimension(); ++j)
        for (std::size_t i = 0; i < s.dimension(); ++i) out[i] += u.columns[j][i] * s[j];
    return StateVector(s.qubits(), std::move(out));
}

inline double max_abs_diff(const StateVector& a, const StateVector& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.dimension(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

}  // namespace testsupport

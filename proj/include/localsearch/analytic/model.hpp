#pragma once

// Four-class reduction of the local-diffusion search.
//
// For a single target t and a partition into an m-qubit subset (diffused by
// G_m) and its complement (diffused by G_{n-m}), every reachable state is a
// combination of four class vectors:
//   |t>         the target,
//   |nt_m>      non-targets that agree with t outside the m-subset,
//   |nt_{n-m}>  non-targets that agree with t on the m-subset,
//   |u>         everything else.
// One oracle call plus one local diffusion acts on these coefficients as a
// real 4x4 orthogonal matrix.

#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "localsearch/errors.hpp"

namespace localsearch::analytic {

using Real = long double;

struct Angles {
    int n{0};
    int m{0};
    Real theta{0};  // sin(theta) = 2^(-m/2)
    Real gamma{0};  // sin(gamma) = 2^((m-n)/2)
};

inline void check_partition(int n, int m) {
    if (n < 2 || n > 62) throw InvalidArgument("n must lie in [2, 62]");
    if (m < 1 || m >= n) throw InvalidArgument("m must satisfy 1 <= m < n");
}

/// asin(2^x); exp2 is exact here, so tiny angles at large n keep full precision.
inline Real angle_from_log2_sin(Real log2_sin) { return std::asin(std::exp2(log2_sin)); }

inline Angles make_angles(int n, int m) {
    check_partition(n, m);
    return {n, m, angle_from_log2_sin(-Real(m) / 2), angle_from_log2_sin(Real(m - n) / 2)};
}

struct AnalyticState {
    Real c_t{0};
    Real c_ntm{0};
    Real c_ntnm{0};
    Real c_u{0};

    Real probability() const { return c_t * c_t; }
    Real norm_squared() const { return c_t * c_t + c_ntm * c_ntm + c_ntnm * c_ntnm + c_u * c_u; }
    std::array<Real, 4> as_array() const { return {c_t, c_ntm, c_ntnm, c_u}; }
};

/// Uniform superposition: (sin g sin t, sin g cos t, cos g sin t, cos g cos t).
inline AnalyticState initial_state(int n, int m) {
    const auto a = make_angles(n, m);
    const Real st = std::sin(a.theta), ct = std::cos(a.theta);
    const Real sg = std::sin(a.gamma), cg = std::cos(a.gamma);
    return {sg * st, sg * ct, cg * st, cg * ct};
}

struct StepMatrix {
    std::array<std::array<Real, 4>, 4> e{};
    int k1{0};
    int k2{0};

    static StepMatrix identity() {
        StepMatrix m;
        for (int i = 0; i < 4; ++i) m.e[i][i] = 1;
        return m;
    }

    AnalyticState apply(const AnalyticState& s) const {
        const auto v = s.as_array();
        std::array<Real, 4> out{};
        for (int i = 0; i < 4; ++i) out[i] = e[i][0] * v[0] + e[i][1] * v[1] + e[i][2] * v[2] + e[i][3] * v[3];
        return {out[0], out[1], out[2], out[3]};
    }

    friend StepMatrix operator*(const StepMatrix& a, const StepMatrix& b) {
        StepMatrix r;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                for (int k = 0; k < 4; ++k) r.e[i][j] += a.e[i][k] * b.e[k][j];
        r.k1 = a.k1 + b.k1;
        r.k2 = a.k2 + b.k2;
        return r;
    }

    /// max |M^T M - I|.
    Real orthogonality_error() const {
        Real worst = 0;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                Real dot = 0;
                for (int k = 0; k < 4; ++k) dot += e[k][i] * e[k][j];
                worst = std::max(worst, std::abs(dot - (i == j ? 1 : 0)));
            }
        return worst;
    }
};

namespace detail {

// The 2x2 reflection-power block: [[a, b], [b, c]] with
// a = s^2 + (-1)^k c^2, b = s c (1 - (-1)^k), c = c^2 + (-1)^k s^2.
struct ParityBlock {
    Real a, b, c;
};

inline ParityBlock parity_block(Real angle, int k) {
    const Real s = std::sin(angle), c = std::cos(angle);
    const Real sign = (k % 2 == 0) ? 1 : -1;
    return {s * s + sign * c * c, s * c * (1 - sign), c * c + sign * s * s};
}

}  // namespace detail

/// (G_m)^k1 in the class basis: a rotation by 2 k1 theta on (t, nt_m) and a
/// parity block on (nt_{n-m}, u).
inline StepMatrix gm_power(const Angles& a, int k1) {
    if (k1 < 0) throw InvalidArgument("power must be non-negative");
    StepMatrix r;
    const Real c2 = std::cos(2 * k1 * a.theta), s2 = std::sin(2 * k1 * a.theta);
    const auto p = detail::parity_block(a.theta, k1);
    r.e = {{{c2, s2, 0, 0}, {-s2, c2, 0, 0}, {0, 0, p.a, p.b}, {0, 0, p.b, p.c}}};
    r.k1 = k1;
    return r;
}

/// (G_{n-m})^k2: the same structure with gamma on (t, nt_{n-m}) and (nt_m, u).
inline StepMatrix gnm_power(const Angles& a, int k2) {
    if (k2 < 0) throw InvalidArgument("power must be non-negative");
    StepMatrix r;
    const Real c2 = std::cos(2 * k2 * a.gamma), s2 = std::sin(2 * k2 * a.gamma);
    const auto p = detail::parity_block(a.gamma, k2);
    r.e = {{{c2, 0, s2, 0}, {0, p.a, 0, p.b}, {-s2, 0, c2, 0}, {0, p.b, 0, p.c}}};
    r.k2 = k2;
    return r;
}

/// One round: k1 calls diffused on the m-subset, then k2 on its complement.
inline StepMatrix step_matrix(int n, int m, int k1, int k2) {
    if (k1 < 1 || k2 < 1) throw InvalidArgument("k1 and k2 must be at least 1");
    const auto a = make_angles(n, m);
    return gnm_power(a, k2) * gm_power(a, k1);
}

/// trace[j] = target probability after j rounds; trace[0] = 2^-n.
inline std::vector<double> evolve(int n, int m, int k1, int k2, int k) {
    if (k < 0) throw InvalidArgument("k must be non-negative");
    const auto step = step_matrix(n, m, k1, k2);
    auto s = initial_state(n, m);
    std::vector<double> trace{static_cast<double>(s.probability())};
    for (int j = 0; j < k; ++j) {
        s = step.apply(s);
        trace.push_back(static_cast<double>(s.probability()));
    }
    return trace;
}

/// Per-oracle-call stepping: k1 calls on the m-subset, k2 on the complement, repeating.
class CallStepper {
public:
    CallStepper(int n, int m, int k1, int k2)
        : state_(initial_state(n, m)), k1_(k1), k2_(k2) {
        if (k1 < 1 || k2 < 1) throw InvalidArgument("k1 and k2 must be at least 1");
        const auto a = make_angles(n, m);
        gm_ = gm_power(a, 1);
        gnm_ = gnm_power(a, 1);
    }

    const AnalyticState& state() const { return state_; }
    std::uint64_t calls() const { return calls_; }

    /// Width class of the next call's diffusion: true for the m-subset.
    bool next_is_m() const { return calls_ % static_cast<std::uint64_t>(k1_ + k2_) < static_cast<std::uint64_t>(k1_); }

    void step() {
        state_ = (next_is_m() ? gm_ : gnm_).apply(state_);
        ++calls_;
    }

private:
    AnalyticState state_;
    int k1_, k2_;
    StepMatrix gm_, gnm_;
    std::uint64_t calls_{0};
};

/// trace[c] = target probability after c oracle calls.
inline std::vector<double> call_trace(int n, int m, int k1, int k2, std::uint64_t calls) {
    CallStepper s(n, m, k1, k2);
    std::vector<double> trace{static_cast<double>(s.state().probability())};
    for (std::uint64_t c = 0; c < calls; ++c) {
        s.step();
        trace.push_back(static_cast<double>(s.state().probability()));
    }
    return trace;
}

}  // namespace localsearch::analytic

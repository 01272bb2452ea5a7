// pom.hpp
// n-to-1 parity-oblivious multiplexing scenarios: generators, success rate,
// parity-obliviousness check and the analytic robustness relations.

#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "contextlab/errors.hpp"
#include "contextlab/gpt.hpp"

namespace contextlab {

struct PomEffectKey {
    int outcome = 0;      // k
    int measurement = 1;  // y, 1-based
};

struct PomScenario {
    int n = 0;               // bits in the encoded string
    double theta = 0.0;      // family parameter (3-to-1 only)
    GptFragment fragment;    // states labelled by bitstring, effects by k|M_y
    std::vector<std::string> bitstrings;      // aligned with fragment.states
    std::vector<PomEffectKey> effect_keys;    // aligned with the first 2n effects
};

namespace pomdetail {

inline std::string bitstring(unsigned x, int n) {
    std::string s(static_cast<std::size_t>(n), '0');
    for (int i = 0; i < n; ++i)
        if (x & (1u << (n - 1 - i))) s[static_cast<std::size_t>(i)] = '1';
    return s;  // big-endian: s[0] is x1
}

}  // namespace pomdetail

// The 3-to-1 cuboid family: 8 states at Bloch vectors
// ((-1)^x1 sin(t)/sqrt2, (-1)^x2 sin(t)/sqrt2, (-1)^x3 cos(t)) and the six
// Pauli projector effects.
inline PomScenario pom3_scenario(double theta) {
    if (theta < 0.0 || theta > M_PI / 2.0 + 1e-12)
        throw InvalidParameter("pom3_scenario: theta outside [0, pi/2]");
    PomScenario sc;
    sc.n = 3;
    sc.theta = theta;
    std::vector<GptVector> states, effects;
    const double sxy = std::sin(theta) / std::sqrt(2.0);
    const double cz = std::cos(theta);
    for (unsigned x = 0; x < 8; ++x) {
        const double bx = ((x & 4u) ? -1.0 : 1.0) * sxy;
        const double by = ((x & 2u) ? -1.0 : 1.0) * sxy;
        const double bz = ((x & 1u) ? -1.0 : 1.0) * cz;
        const std::string label = pomdetail::bitstring(x, 3);
        states.push_back(vectorize_state(qubit_density(bx, by, bz), label));
        sc.bitstrings.push_back(label);
    }
    const double axes[3][3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    for (int y = 1; y <= 3; ++y) {
        for (int k = 0; k < 2; ++k) {
            const double sign = (k == 0) ? 1.0 : -1.0;
            const CMatrix proj =
                0.5 * (CMatrix::Identity(2, 2) +
                       sign * devectorize((Vector(4) << 0.0,
                                           std::sqrt(2.0) * axes[y - 1][0],
                                           std::sqrt(2.0) * axes[y - 1][1],
                                           std::sqrt(2.0) * axes[y - 1][2])
                                              .finished()));
            effects.push_back(vectorize_effect(
                proj, std::to_string(k) + "|M" + std::to_string(y)));
            sc.effect_keys.push_back({k, y});
        }
    }
    sc.fragment = build_fragment(std::move(states), std::move(effects),
                                 qubit_unit_effect(), qubit_max_mixed());
    return sc;
}

// The optimal 2-to-1 scenario: equatorial square in the XZ plane with X and Z
// measurements.
inline PomScenario pom2_scenario() {
    PomScenario sc;
    sc.n = 2;
    const double s = 1.0 / std::sqrt(2.0);
    std::vector<GptVector> states, effects;
    for (unsigned x = 0; x < 4; ++x) {
        const double bx = ((x & 2u) ? -1.0 : 1.0) * s;
        const double bz = ((x & 1u) ? -1.0 : 1.0) * s;
        const std::string label = pomdetail::bitstring(x, 2);
        states.push_back(vectorize_state(qubit_density(bx, 0.0, bz), label));
        sc.bitstrings.push_back(label);
    }
    const double axes[2][3] = {{1, 0, 0}, {0, 0, 1}};
    for (int y = 1; y <= 2; ++y) {
        for (int k = 0; k < 2; ++k) {
            const double sign = (k == 0) ? 1.0 : -1.0;
            const CMatrix proj =
                0.5 * (CMatrix::Identity(2, 2) +
                       sign * devectorize((Vector(4) << 0.0,
                                           std::sqrt(2.0) * axes[y - 1][0], 0.0,
                                           std::sqrt(2.0) * axes[y - 1][2])
                                              .finished()));
            effects.push_back(vectorize_effect(
                proj, std::to_string(k) + "|M" + std::to_string(y)));
            sc.effect_keys.push_back({k, y});
        }
    }
    sc.fragment = build_fragment(std::move(states), std::move(effects),
                                 qubit_unit_effect(), qubit_max_mixed());
    return sc;
}

namespace pomdetail {

// p(k | M_y, P_x) looked up through the scenario's labelled effects.
inline double outcome_probability(const PomScenario& sc, unsigned x, int y, int k) {
    for (std::size_t e = 0; e < sc.effect_keys.size(); ++e)
        if (sc.effect_keys[e].measurement == y && sc.effect_keys[e].outcome == k)
            return probability(sc.fragment.states[x], sc.fragment.effects[e]);
    throw InvalidParameter("outcome_probability: no such effect");
}

inline int bit_of(unsigned x, int y, int n) {
    return (x >> (n - y)) & 1u;  // y is 1-based, bit x_y in big-endian order
}

}  // namespace pomdetail

// Average decoding success s = (1 / 2^n n) sum_y sum_x p(k = x_y | M_y, P_x).
inline double success_rate(const PomScenario& sc) {
    const unsigned count = 1u << sc.n;
    double total = 0.0;
    for (int y = 1; y <= sc.n; ++y)
        for (unsigned x = 0; x < count; ++x)
            total += pomdetail::outcome_probability(
                sc, x, y, pomdetail::bit_of(x, y, sc.n));
    return total / (static_cast<double>(count) * sc.n);
}

struct ParityViolation {
    std::string parity_string;
    int measurement = 0;
    double gap = 0.0;
};

// Checks the parity-obliviousness balance for every parity string t with at
// least two set bits and every measurement.
inline std::vector<ParityViolation> parity_oblivious_check(const PomScenario& sc,
                                                           double tol = 1e-10) {
    std::vector<ParityViolation> violations;
    const unsigned count = 1u << sc.n;
    for (unsigned t = 0; t < count; ++t) {
        if (__builtin_popcount(t) < 2) continue;
        for (int y = 1; y <= sc.n; ++y) {
            double even = 0.0, odd = 0.0;
            for (unsigned x = 0; x < count; ++x) {
                const double p = pomdetail::outcome_probability(
                    sc, x, y, pomdetail::bit_of(x, y, sc.n));
                (__builtin_popcount(x & t) % 2 == 0 ? even : odd) += p;
            }
            if (std::abs(even - odd) > tol)
                violations.push_back(
                    {pomdetail::bitstring(t, sc.n), y, std::abs(even - odd)});
        }
    }
    return violations;
}

// Closed-form bounds: s_NC = (1 + 1/n)/2 and s_Q = (1 + 1/sqrt n)/2.
inline std::pair<double, double> bounds(int n) {
    if (n < 1) throw InvalidParameter("bounds: n must be >= 1");
    return {0.5 * (1.0 + 1.0 / n), 0.5 * (1.0 + 1.0 / std::sqrt(static_cast<double>(n)))};
}

// Minimum depolarising noise making the scenario perform classically:
// max(0, (s - s_NC) / (s - 1/2)).
inline double analytic_robustness(double s, int n) {
    if (s <= 0.5 || s > 1.0 + 1e-12)
        throw InvalidParameter("analytic_robustness: s must lie in (1/2, 1]");
    const double s_nc = bounds(n).first;
    return std::max(0.0, (s - s_nc) / (s - 0.5));
}

// s_depol = (1 - r) s + r/2.
inline double depolarized_success(double s, double r) {
    if (s < 0.0 || s > 1.0 || r < 0.0 || r > 1.0)
        throw InvalidParameter("depolarized_success: arguments outside [0, 1]");
    return (1.0 - r) * s + 0.5 * r;
}

// Largest n with 1 - 1/sqrt(n) < r_cap, i.e. the largest integer strictly
// below (1 - r_cap)^(-2).
inline int max_encodable_bits(double r_cap) {
    if (r_cap <= 0.0 || r_cap >= 1.0)
        throw InvalidParameter("max_encodable_bits: r_cap must lie in (0, 1)");
    const double limit = 1.0 / ((1.0 - r_cap) * (1.0 - r_cap));
    int n = static_cast<int>(std::floor(limit));
    if (static_cast<double>(n) >= limit - 1e-12) --n;  // strict inequality
    return std::max(1, n);
}

// Real-circle scaling fragment: 2n preparations |k> = cos(k pi / 2n)|0> +
// sin(k pi / 2n)|1> (k = 0..2n-1; the k = 2n entry repeats k = 0 projectively)
// and 2n projector outcomes interleaved halfway between neighbouring
// preparations. The half-spacing offset equals pi/8 on the kets at n = 2,
// where the fragment reduces to the optimal 2-to-1 configuration, and keeps
// the preparations and outcomes equally distributed for every n, which is
// what makes r(n) climb monotonically toward 1/2.
inline GptFragment hemisphere_fragment(int n) {
    if (n < 2) throw InvalidParameter("hemisphere_fragment: n must be >= 2");
    std::vector<GptVector> states, effects;
    for (int k = 0; k < 2 * n; ++k) {
        const double a = k * M_PI / (2.0 * n);
        states.push_back(vectorize_state(
            qubit_density(std::sin(2.0 * a), 0.0, std::cos(2.0 * a)),
            "k" + std::to_string(k)));
        const double b = a + M_PI / (4.0 * n);
        effects.push_back(vectorize_effect(
            qubit_density(std::sin(2.0 * b), 0.0, std::cos(2.0 * b)),
            "e" + std::to_string(k)));
    }
    return build_fragment(std::move(states), std::move(effects),
                          qubit_unit_effect(), qubit_max_mixed());
}

}  // namespace contextlab

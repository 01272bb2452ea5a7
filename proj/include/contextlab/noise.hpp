// noise.hpp
// Depolarising and dephasing noise maps on the GPT vector space.

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "contextlab/errors.hpp"
#include "contextlab/gpt.hpp"

namespace contextlab {

enum class NoiseKind { depolarising, dephasing };

struct NoiseMap {
    Matrix matrix;  // linear map V -> V, acting on state vectors
    NoiseKind kind = NoiseKind::depolarising;
    std::string name;
};

struct SelfDualityReport {
    bool orthogonal = true;      // <e_i, e_j> = 0 for i != j
    bool complete = true;        // sum_i e_i = u
    bool normalized = true;      // <e_i, e_i> = 1 (state counterpart exists)
    bool pass() const { return orthogonal && complete && normalized; }
    std::string describe() const {
        if (pass()) return "pass";
        std::string s = "failed:";
        if (!orthogonal) s += " effects-not-orthogonal";
        if (!complete) s += " effects-do-not-sum-to-unit";
        if (!normalized) s += " effect-state-pairing-not-normalized";
        return s;
    }
};

// Checks the strong-self-duality prerequisites for dephasing: the effects in
// M must be mutually orthogonal, sum to the unit effect, and each must pair
// to 1 with its transposed state counterpart.
inline SelfDualityReport selfduality_check(const std::vector<GptVector>& effects,
                                           const GptVector& unit,
                                           double tol = 1e-10) {
    if (effects.empty())
        throw InvalidNoiseDefinition("selfduality_check: empty effect list");
    SelfDualityReport rep;
    Vector sum = Vector::Zero(unit.coords.size());
    for (std::size_t i = 0; i < effects.size(); ++i) {
        sum += effects[i].coords;
        if (std::abs(effects[i].coords.squaredNorm() - 1.0) > tol) rep.normalized = false;
        for (std::size_t j = i + 1; j < effects.size(); ++j)
            if (std::abs(effects[i].coords.dot(effects[j].coords)) > tol)
                rep.orthogonal = false;
    }
    if ((sum - unit.coords).cwiseAbs().maxCoeff() > tol) rep.complete = false;
    return rep;
}

// Discard-and-reprepare toward the maximally mixed state: D = mu * u^T.
inline NoiseMap depolarising_map(const GptVector& max_mixed, const GptVector& unit) {
    if (std::abs(max_mixed.coords.dot(unit.coords) - 1.0) > 1e-10)
        throw InvalidNoiseDefinition("depolarising_map: <mu, u> != 1");
    NoiseMap nm;
    nm.matrix = max_mixed.coords * unit.coords.transpose();
    nm.kind = NoiseKind::depolarising;
    nm.name = "depol";
    return nm;
}

// Measure-and-reprepare along an orthogonal, complete effect set:
// D = sum_i ebar_i e_i^T with ebar_i the transposed effect vector.
inline NoiseMap dephasing_map(const std::vector<GptVector>& dephasing_effects,
                              const GptVector& unit, std::string name = "deph") {
    const SelfDualityReport rep = selfduality_check(dephasing_effects, unit);
    if (!rep.pass())
        throw NotSelfDualCompatible("dephasing_map: " + rep.describe());
    const auto dim = unit.coords.size();
    NoiseMap nm;
    nm.matrix = Matrix::Zero(dim, dim);
    for (const auto& e : dephasing_effects)
        nm.matrix += e.coords * e.coords.transpose();
    nm.kind = NoiseKind::dephasing;
    nm.name = std::move(name);
    return nm;
}

// The two rank-1 projector effects of a qubit dephasing axis at spherical
// angles (theta_r, phi_r): (1/sqrt2)(1, +-sin t cos p, +-sin t sin p, +-cos t).
inline std::pair<GptVector, GptVector> axis_effects(double theta_r, double phi_r) {
    const double s = 1.0 / std::sqrt(2.0);
    Vector plus(4), minus(4);
    plus << s, s * std::sin(theta_r) * std::cos(phi_r),
        s * std::sin(theta_r) * std::sin(phi_r), s * std::cos(theta_r);
    minus << s, -plus[1], -plus[2], -plus[3];
    return {GptVector{plus, Role::effect, "axis+"},
            GptVector{minus, Role::effect, "axis-"}};
}

// Applies partial noise at strength r to every state of a fragment:
// s -> (1-r) s + r D s. Effects, u and mu are untouched.
inline GptFragment apply_noise(const GptFragment& frag, const NoiseMap& noise,
                               double strength) {
    if (strength < 0.0 || strength > 1.0)
        throw InvalidParameter("apply_noise: strength outside [0, 1]");
    GptFragment out = frag;
    for (auto& s : out.states)
        s.coords = (1.0 - strength) * s.coords + strength * (noise.matrix * s.coords);
    return out;
}

}  // namespace contextlab

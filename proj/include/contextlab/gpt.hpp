// gpt.hpp
// Real-vector representation of quantum states and effects.
//
// Operators are expanded in an orthonormal Hermitian basis (identity/sqrt(d)
// followed by generalized Gell-Mann matrices of Hilbert-Schmidt norm 1), so
// that the dot product of two vectorized operators equals Tr(AB). For d=2 the
// basis is {1, X, Y, Z}/sqrt(2).

#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "contextlab/errors.hpp"

namespace contextlab {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using CMatrix = Eigen::MatrixXcd;

enum class Role { state, effect };

struct GptVector {
    Vector coords;
    Role role = Role::state;
    std::string label;
};

namespace detail {

inline constexpr double kDupTol = 1e-10;  // duplicate-vector comparison

inline bool same_vector(const Vector& a, const Vector& b, double tol = kDupTol) {
    if (a.size() != b.size()) return false;
    return (a - b).cwiseAbs().maxCoeff() < tol;
}

}  // namespace detail

// Orthonormal Hermitian operator basis for a dimension-d system.
// Element 0 is identity/sqrt(d); the rest are generalized Gell-Mann matrices
// scaled to HS-norm 1. For d=2 this yields {1, X, Y, Z}/sqrt(2).
inline std::vector<CMatrix> hermitian_basis(int d) {
    if (d < 1) throw InvalidParameter("hermitian_basis: d must be >= 1");
    using namespace std::complex_literals;
    std::vector<CMatrix> basis;
    basis.push_back(CMatrix::Identity(d, d) / std::sqrt(static_cast<double>(d)));
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (int j = 0; j < d; ++j) {
        for (int k = j + 1; k < d; ++k) {
            CMatrix sym = CMatrix::Zero(d, d);
            sym(j, k) = inv_sqrt2;
            sym(k, j) = inv_sqrt2;
            basis.push_back(sym);
            CMatrix asym = CMatrix::Zero(d, d);
            asym(j, k) = -1i * inv_sqrt2;
            asym(k, j) = 1i * inv_sqrt2;
            basis.push_back(asym);
        }
        if (j > 0) {
            CMatrix diag = CMatrix::Zero(d, d);
            for (int l = 0; l < j; ++l) diag(l, l) = 1.0;
            diag(j, j) = -static_cast<double>(j);
            diag /= std::sqrt(static_cast<double>(j) * (j + 1));
            basis.push_back(diag);
        }
    }
    return basis;
}

// Qubit basis order in hermitian_basis(2) is {1, X, Y, Z}/sqrt(2), but the
// generic Gell-Mann loop emits {1, X, Y, Z} already; keep this helper for
// Bloch-style construction: rho = (1 + b.x X + b.y Y + b.z Z)/2.
inline CMatrix qubit_density(double bx, double by, double bz) {
    using namespace std::complex_literals;
    CMatrix rho(2, 2);
    rho(0, 0) = 0.5 * (1.0 + bz);
    rho(1, 1) = 0.5 * (1.0 - bz);
    rho(0, 1) = 0.5 * (bx - 1i * by);
    rho(1, 0) = 0.5 * (bx + 1i * by);
    return rho;
}

namespace detail {

inline void require_hermitian(const CMatrix& m, const char* who) {
    if (m.rows() != m.cols())
        throw InvalidOperator(std::string(who) + ": matrix is not square");
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
        throw InvalidOperator(std::string(who) + ": matrix is not Hermitian");
}

inline Vector hs_components(const CMatrix& m) {
    const int d = static_cast<int>(m.rows());
    const auto basis = hermitian_basis(d);
    Vector coords(static_cast<int>(basis.size()));
    for (std::size_t i = 0; i < basis.size(); ++i)
        coords[static_cast<int>(i)] = (basis[i] * m).trace().real();
    return coords;
}

}  // namespace detail

inline GptVector vectorize_state(const CMatrix& rho, std::string label = {}) {
    detail::require_hermitian(rho, "vectorize_state");
    return {detail::hs_components(rho), Role::state, std::move(label)};
}

inline GptVector vectorize_effect(const CMatrix& effect, std::string label = {}) {
    detail::require_hermitian(effect, "vectorize_effect");
    Eigen::SelfAdjointEigenSolver<CMatrix> es(effect);
    const auto& ev = es.eigenvalues();
    if (ev.minCoeff() < -1e-9 || ev.maxCoeff() > 1.0 + 1e-9)
        throw InvalidEffect("vectorize_effect: eigenvalue outside [0, 1]");
    return {detail::hs_components(effect), Role::effect, std::move(label)};
}

// Inverse of the vectorization map.
inline CMatrix devectorize(const Vector& coords) {
    const double dsq = static_cast<double>(coords.size());
    const int d = static_cast<int>(std::lround(std::sqrt(dsq)));
    if (d * d != coords.size())
        throw DimensionMismatch("devectorize: length is not a perfect square");
    const auto basis = hermitian_basis(d);
    CMatrix m = CMatrix::Zero(d, d);
    for (int i = 0; i < coords.size(); ++i) m += coords[i] * basis[static_cast<std::size_t>(i)];
    return m;
}

// p(k|M,P) as the inner product of the state and effect vectors.
inline double probability(const GptVector& s, const GptVector& e) {
    if (s.coords.size() != e.coords.size())
        throw DimensionMismatch("probability: vector lengths differ");
    return s.coords.dot(e.coords);
}

struct GptFragment {
    std::vector<GptVector> states;
    std::vector<GptVector> effects;
    GptVector unit;       // u
    GptVector max_mixed;  // mu
};

// Assembles a fragment, optionally closing the effect list under
// {0, u, u - e}. Probability bounds are validated pairwise.
inline GptFragment build_fragment(std::vector<GptVector> states,
                                  std::vector<GptVector> effects,
                                  GptVector unit, GptVector max_mixed,
                                  bool augment = true, double tol = 1e-9) {
    if (states.empty()) throw InvalidFragment("build_fragment: empty state list");
    const auto dim = unit.coords.size();
    for (const auto& s : states)
        if (s.coords.size() != dim)
            throw InvalidFragment("build_fragment: state dimension mismatch");
    for (const auto& e : effects)
        if (e.coords.size() != dim)
            throw InvalidFragment("build_fragment: effect dimension mismatch");
    if (std::abs(max_mixed.coords.dot(unit.coords) - 1.0) > tol)
        throw InvalidFragment("build_fragment: <mu, u> != 1");

    GptFragment frag{std::move(states), std::move(effects), std::move(unit),
                     std::move(max_mixed)};
    if (augment) {
        std::vector<GptVector> closed = frag.effects;
        auto push_unique = [&closed](GptVector v) {
            for (const auto& w : closed)
                if (detail::same_vector(w.coords, v.coords)) return;
            closed.push_back(std::move(v));
        };
        push_unique({Vector::Zero(dim), Role::effect, "0"});
        push_unique({frag.unit.coords, Role::effect, "u"});
        const std::size_t base = frag.effects.size();
        for (std::size_t i = 0; i < base; ++i)
            push_unique({frag.unit.coords - frag.effects[i].coords, Role::effect,
                         "u-" + frag.effects[i].label});
        frag.effects = std::move(closed);
    }

    for (const auto& s : frag.states)
        for (const auto& e : frag.effects) {
            const double p = s.coords.dot(e.coords);
            if (p < -tol || p > 1.0 + tol)
                throw InvalidFragment("build_fragment: probability outside [0, 1]");
        }
    return frag;
}

inline GptVector qubit_unit_effect() {
    Vector u(4);
    u << std::sqrt(2.0), 0, 0, 0;
    return {u, Role::effect, "u"};
}

inline GptVector qubit_max_mixed() {
    Vector mu(4);
    mu << 1.0 / std::sqrt(2.0), 0, 0, 0;
    return {mu, Role::state, "mu"};
}

}  // namespace contextlab

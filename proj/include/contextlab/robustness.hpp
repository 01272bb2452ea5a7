// robustness.hpp
// Robustness-of-contextuality linear program and noncontextual ontological
// model extraction.
//
// The program minimizes r in [0, 1] subject to
//   r I_E^T D I_O + (1-r) I_E^T I_O = H_E^T sigma H_O,   sigma >= 0,
// which is a single LP since the constraint is affine in (r, sigma).

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "contextlab/errors.hpp"
#include "contextlab/geometry.hpp"
#include "contextlab/gpt.hpp"
#include "contextlab/lp.hpp"
#include "contextlab/noise.hpp"

namespace contextlab {

struct OntologicalModel {
    std::vector<std::pair<int, int>> ontic_states;  // (effect facet, state facet)
    Matrix epistemic;   // #states x #ontic, mu_P(lambda)
    Matrix responses;   // #effects x #ontic, xi_{k|M}(lambda)
};

struct RobustnessCertificate {
    double r_min = 0.0;
    Matrix sigma;  // m x n, entrywise nonnegative
    OntologicalModel model;
    NoiseKind noise_kind = NoiseKind::depolarising;
    std::string noise_name;
    double residual_max = 0.0;
};

namespace rdetail {

inline constexpr double kSigmaSupportTol = 1e-10;  // Lambda membership

struct Program {
    Matrix A;  // rows: equalities, cols: [r, slack, sigma...]
    Vector b;
    int m = 0, n = 0;  // sigma shape
};

inline Program assemble(const AccessibleFragment& acc, const NoiseMap& noise) {
    const Matrix a_noise = acc.I_effects.transpose() * noise.matrix * acc.I_states;
    const Matrix b_id = acc.I_effects.transpose() * acc.I_states;
    const int de = static_cast<int>(a_noise.rows());
    const int ds = static_cast<int>(a_noise.cols());
    const int m = static_cast<int>(acc.H_effects.rows());
    const int n = static_cast<int>(acc.H_states.rows());

    Program p;
    p.m = m;
    p.n = n;
    const int nvars = 2 + m * n;
    p.A = Matrix::Zero(de * ds + 1, nvars);
    p.b = Vector::Zero(de * ds + 1);
    for (int a = 0; a < de; ++a) {
        for (int c = 0; c < ds; ++c) {
            const int row = a * ds + c;
            p.A(row, 0) = b_id(a, c) - a_noise(a, c);  // coefficient of r
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < n; ++j)
                    p.A(row, 2 + i * n + j) = acc.H_effects(i, a) * acc.H_states(j, c);
            p.b[row] = b_id(a, c);
        }
    }
    p.A(de * ds, 0) = 1.0;  // r + slack = 1
    p.A(de * ds, 1) = 1.0;
    p.b[de * ds] = 1.0;
    return p;
}

}  // namespace rdetail

// Residual of the Program 2 equality at (r, sigma).
inline double program_residual(const AccessibleFragment& acc, const NoiseMap& noise,
                               double r, const Matrix& sigma) {
    const Matrix lhs = r * acc.I_effects.transpose() * noise.matrix * acc.I_states +
                       (1.0 - r) * acc.I_effects.transpose() * acc.I_states;
    const Matrix rhs = acc.H_effects.transpose() * sigma * acc.H_states;
    return (lhs - rhs).cwiseAbs().maxCoeff();
}

// Feasibility of the embedding at a fixed noise strength.
inline bool feasible_at(const AccessibleFragment& acc, const NoiseMap& noise,
                        double r_fixed) {
    const rdetail::Program p = rdetail::assemble(acc, noise);
    const int rows = static_cast<int>(p.A.rows()) - 1;  // drop the r + slack row
    Matrix a = p.A.block(0, 2, rows, p.m * p.n);
    Vector b = p.b.head(rows) - r_fixed * p.A.col(0).head(rows);
    return lp_feasible(a, b);
}

// Factorises sigma into a noncontextual ontological model. Ontic states are
// the populated sigma entries; weights are rescaled per ontic state so that
// responses to the unit effect are identically 1.
inline OntologicalModel extract_model(double /*r*/, const Matrix& sigma,
                                      const AccessibleFragment& acc,
                                      const GptFragment& frag) {
    int u_index = -1;
    for (std::size_t e = 0; e < frag.effects.size(); ++e)
        if (detail::same_vector(frag.effects[e].coords, frag.unit.coords)) {
            u_index = static_cast<int>(e);
            break;
        }
    if (u_index < 0)
        throw InvalidFragment("extract_model: unit effect not in effect list");

    const int ns = static_cast<int>(acc.state_coords.size());
    const int ne = static_cast<int>(acc.effect_coords.size());
    Matrix h_states(acc.H_states.rows(), ns);   // h_j(s_P)
    Matrix h_effects(acc.H_effects.rows(), ne); // h_i(e)
    for (int p = 0; p < ns; ++p)
        h_states.col(p) = acc.H_states * acc.state_coords[static_cast<std::size_t>(p)];
    for (int e = 0; e < ne; ++e)
        h_effects.col(e) = acc.H_effects * acc.effect_coords[static_cast<std::size_t>(e)];

    OntologicalModel model;
    for (int i = 0; i < sigma.rows(); ++i)
        for (int j = 0; j < sigma.cols(); ++j)
            if (sigma(i, j) > rdetail::kSigmaSupportTol)
                model.ontic_states.emplace_back(i, j);

    const int nl = static_cast<int>(model.ontic_states.size());
    model.epistemic = Matrix::Zero(ns, nl);
    model.responses = Matrix::Zero(ne, nl);
    for (int l = 0; l < nl; ++l) {
        const auto [i, j] = model.ontic_states[static_cast<std::size_t>(l)];
        const double c = h_effects(i, u_index);  // response to the unit effect
        if (c < 1e-12)
            throw DegenerateModel("extract_model: h_i(u) = 0 for a populated ontic state");
        for (int p = 0; p < ns; ++p)
            model.epistemic(p, l) = sigma(i, j) * h_states(j, p) * c;
        for (int e = 0; e < ne; ++e)
            model.responses(e, l) = h_effects(i, e) / c;
    }
    return model;
}

// Solves Program 2 (with an arbitrary noise map) and extracts the model.
inline RobustnessCertificate solve_robustness(const AccessibleFragment& acc,
                                              const GptFragment& frag,
                                              const NoiseMap& noise) {
    const rdetail::Program p = rdetail::assemble(acc, noise);
    Vector c = Vector::Zero(p.A.cols());
    c[0] = 1.0;  // minimize r
    const LpResult lp = solve_lp(p.A, p.b, c);
    if (lp.status == LpStatus::infeasible)
        throw NoFiniteRobustness("solve_robustness: no simplex embedding for any r in [0, 1]");
    if (lp.status != LpStatus::optimal)
        throw SolverError("solve_robustness: LP solver failed");

    RobustnessCertificate cert;
    cert.r_min = lp.x[0];
    cert.sigma = Matrix::Zero(p.m, p.n);
    for (int i = 0; i < p.m; ++i)
        for (int j = 0; j < p.n; ++j)
            cert.sigma(i, j) = lp.x[2 + i * p.n + j];
    cert.noise_kind = noise.kind;
    cert.noise_name = noise.name;
    cert.residual_max = program_residual(acc, noise, cert.r_min, cert.sigma);
    cert.model = extract_model(cert.r_min, cert.sigma, acc, frag);
    return cert;
}

struct ModelDiagnostics {
    double max_reproduction_residual = 0.0;  // vs the r-noised probabilities
    double max_normalization_error = 0.0;    // |sum_l mu_P(l) - 1|
    double min_response = 0.0;
    double max_response = 1.0;
    double max_complement_error = 0.0;       // |xi_e + xi_{u-e} - 1|
};

// Independent check that the extracted model reproduces the r-noised
// statistics and satisfies the ontological-model conventions.
inline ModelDiagnostics validate_model(const RobustnessCertificate& cert,
                                       const GptFragment& frag,
                                       const NoiseMap& noise) {
    ModelDiagnostics d;
    const int ns = static_cast<int>(frag.states.size());
    const int ne = static_cast<int>(frag.effects.size());
    const double r = cert.r_min;
    for (int p = 0; p < ns; ++p) {
        const Vector noised = (1.0 - r) * frag.states[static_cast<std::size_t>(p)].coords +
                              r * (noise.matrix * frag.states[static_cast<std::size_t>(p)].coords);
        for (int e = 0; e < ne; ++e) {
            const double target = frag.effects[static_cast<std::size_t>(e)].coords.dot(noised);
            const double repro = cert.model.responses.row(e).dot(cert.model.epistemic.row(p));
            d.max_reproduction_residual =
                std::max(d.max_reproduction_residual, std::abs(repro - target));
        }
        d.max_normalization_error = std::max(
            d.max_normalization_error, std::abs(cert.model.epistemic.row(p).sum() - 1.0));
    }
    if (cert.model.responses.size() > 0) {
        d.min_response = cert.model.responses.minCoeff();
        d.max_response = cert.model.responses.maxCoeff();
    }
    // Complement pairs xi_e + xi_{u-e} = 1, for pairs present in the list.
    for (int e = 0; e < ne; ++e) {
        const Vector comp = frag.unit.coords - frag.effects[static_cast<std::size_t>(e)].coords;
        for (int f = e + 1; f < ne; ++f) {
            if (!detail::same_vector(comp, frag.effects[static_cast<std::size_t>(f)].coords))
                continue;
            const double err = (cert.model.responses.row(e) + cert.model.responses.row(f) -
                                Eigen::RowVectorXd::Ones(cert.model.responses.cols()))
                                   .cwiseAbs()
                                   .maxCoeff();
            d.max_complement_error = std::max(d.max_complement_error, err);
        }
    }
    return d;
}

struct AxisSpec {
    std::string name;  // "X", "Y", "Z" or "custom:<theta>,<phi>"
    double theta = 0.0;
    double phi = 0.0;
};

inline AxisSpec axis_x() { return {"X", M_PI / 2.0, 0.0}; }
inline AxisSpec axis_y() { return {"Y", M_PI / 2.0, M_PI / 2.0}; }
inline AxisSpec axis_z() { return {"Z", 0.0, 0.0}; }

inline NoiseMap dephasing_map_for_axis(const AxisSpec& axis, const GptVector& unit) {
    const auto [plus, minus] = axis_effects(axis.theta, axis.phi);
    return dephasing_map({plus, minus}, unit, "deph:" + axis.name);
}

struct AxisResult {
    AxisSpec axis;
    bool finite = false;
    double r = 0.0;
    RobustnessCertificate cert;  // valid when finite
};

struct AxisMinimum {
    bool any_finite = false;
    double r_min = 0.0;
    std::string argmin_axis;
    std::vector<AxisResult> table;
};

// Dephasing robustness minimised over a list of axes. Infeasible axes are
// excluded from the minimum but kept in the table; ties break by list order.
inline AxisMinimum min_over_axes(const GptFragment& frag,
                                 const std::vector<AxisSpec>& axes) {
    const AccessibleFragment acc = accessible(frag);
    AxisMinimum out;
    for (const auto& axis : axes) {
        AxisResult res;
        res.axis = axis;
        try {
            const NoiseMap nm = dephasing_map_for_axis(axis, frag.unit);
            res.cert = solve_robustness(acc, frag, nm);
            res.finite = true;
            res.r = res.cert.r_min;
        } catch (const NoFiniteRobustness&) {
            res.finite = false;
        }
        if (res.finite && (!out.any_finite || res.r < out.r_min)) {
            out.any_finite = true;
            out.r_min = res.r;
            out.argmin_axis = axis.name;
        }
        out.table.push_back(std::move(res));
    }
    if (!out.any_finite)
        throw NoFiniteRobustness("min_over_axes: all axes infeasible");
    return out;
}

}  // namespace contextlab

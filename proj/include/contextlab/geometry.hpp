// geometry.hpp
// Accessible-fragment coordinates and polyhedral cone facet enumeration.
//
// Facets of Cone(generators) are the extreme rays of the dual cone
// {y : g.y >= 0 for all generators g}, computed by incremental double
// description with lineality handling.

#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <vector>

#include "contextlab/errors.hpp"
#include "contextlab/gpt.hpp"
#include "contextlab/lp.hpp"

namespace contextlab {

struct SpanBasis {
    Matrix inclusion;            // ambient_dim x k, orthonormal columns
    std::vector<Vector> coords;  // per input vector, length k
};

// Orthonormal basis of the numerical span of a vector list.
inline SpanBasis span_basis(const std::vector<Vector>& vectors, double tol = 1e-9) {
    if (vectors.empty()) throw DegenerateSpan("span_basis: empty input");
    const int dim = static_cast<int>(vectors.front().size());
    Matrix m(dim, static_cast<int>(vectors.size()));
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        if (vectors[i].size() != dim)
            throw DimensionMismatch("span_basis: mixed vector lengths");
        m.col(static_cast<int>(i)) = vectors[i];
    }
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0 || sv[0] < tol) throw DegenerateSpan("span_basis: all-zero input");
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i)
        if (sv[i] > tol * sv[0]) ++rank;
    SpanBasis out;
    out.inclusion = svd.matrixU().leftCols(rank);
    out.coords.reserve(vectors.size());
    for (const auto& v : vectors) out.coords.push_back(out.inclusion.transpose() * v);
    return out;
}

namespace ddetail {

struct Ray {
    Vector v;
    std::vector<int> tight;  // indices of processed inequalities tight at v
};

inline std::vector<int> tight_set(const Vector& v, const std::vector<Vector>& ineqs,
                                  double tol) {
    std::vector<int> out;
    for (std::size_t i = 0; i < ineqs.size(); ++i)
        if (std::abs(ineqs[i].dot(v)) < tol) out.push_back(static_cast<int>(i));
    return out;
}

inline bool subset_of(const std::vector<int>& a, const std::vector<int>& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace ddetail

// Facet matrix H of the conic hull of `coords` (one facet functional per row,
// unit norm, lexicographically sorted). The generators must span R^k.
inline Matrix cone_facets(const std::vector<Vector>& coords, double tol = 1e-9) {
    using ddetail::Ray;
    if (coords.empty()) throw DegenerateSpan("cone_facets: empty input");
    const int k = static_cast<int>(coords.front().size());

    // Drop near-zero generators and normalize the rest.
    std::vector<Vector> gens;
    for (const auto& v : coords) {
        const double n = v.norm();
        if (n > tol) gens.push_back(v / n);
    }
    if (gens.empty()) throw DegenerateSpan("cone_facets: all generators are zero");
    {
        Matrix m(k, static_cast<int>(gens.size()));
        for (std::size_t i = 0; i < gens.size(); ++i) m.col(static_cast<int>(i)) = gens[i];
        Eigen::JacobiSVD<Matrix> svd(m);
        const auto& sv = svd.singularValues();
        int rank = 0;
        for (int i = 0; i < sv.size(); ++i)
            if (sv[i] > tol * sv[0]) ++rank;
        if (rank < k)
            throw NotFullDimensional("cone_facets: generators do not span R^k");
    }

    // Double description of the dual cone, inserting one halfspace per
    // generator. Start from the full space as lineality.
    std::vector<Vector> lineality;
    for (int i = 0; i < k; ++i) lineality.push_back(Vector::Unit(k, i));
    std::vector<Ray> rays;
    std::vector<Vector> processed;

    for (const auto& a : gens) {
        // Lineality elimination first.
        int pick = -1;
        double best = tol;
        for (std::size_t i = 0; i < lineality.size(); ++i) {
            const double d = std::abs(a.dot(lineality[i]));
            if (d > best) { best = d; pick = static_cast<int>(i); }
        }
        if (pick >= 0) {
            Vector w = lineality[static_cast<std::size_t>(pick)];
            if (a.dot(w) < 0) w = -w;
            const double aw = a.dot(w);
            lineality.erase(lineality.begin() + pick);
            for (auto& l : lineality) l -= (a.dot(l) / aw) * w;
            for (auto& r : rays) {
                r.v -= (a.dot(r.v) / aw) * w;
                if (r.v.norm() > tol) r.v.normalize();
            }
            processed.push_back(a);
            for (auto& r : rays) r.tight = ddetail::tight_set(r.v, processed, 1e-7);
            Ray nr{w / w.norm(), {}};
            nr.tight = ddetail::tight_set(nr.v, processed, 1e-7);
            rays.push_back(std::move(nr));
            continue;
        }

        // Partition rays by sign against the new halfspace.
        std::vector<Ray> pos, zero, neg;
        for (auto& r : rays) {
            const double d = a.dot(r.v);
            if (d > tol) pos.push_back(std::move(r));
            else if (d < -tol) neg.push_back(std::move(r));
            else zero.push_back(std::move(r));
        }
        std::vector<Ray> next = pos;
        for (auto& z : zero) next.push_back(z);

        // Combine adjacent (+,-) pairs on the new hyperplane.
        for (const auto& p : pos) {
            for (const auto& n : neg) {
                std::vector<int> common;
                std::set_intersection(p.tight.begin(), p.tight.end(),
                                      n.tight.begin(), n.tight.end(),
                                      std::back_inserter(common));
                // Combinatorial adjacency: no third ray is tight on a
                // superset of the common tight set.
                auto check = [&](const std::vector<Ray>& group) {
                    for (const auto& r3 : group) {
                        if (r3.v.isApprox(p.v) || r3.v.isApprox(n.v)) continue;
                        if (ddetail::subset_of(common, r3.tight)) return false;
                    }
                    return true;
                };
                const bool adjacent = check(pos) && check(zero) && check(neg);
                if (!adjacent) continue;
                Vector nv = a.dot(p.v) * n.v - a.dot(n.v) * p.v;
                if (nv.norm() < tol) continue;
                nv.normalize();
                bool dup = false;
                for (const auto& r : next)
                    if ((r.v - nv).cwiseAbs().maxCoeff() < 1e-9) { dup = true; break; }
                if (!dup) next.push_back(Ray{nv, {}});
            }
        }
        processed.push_back(a);
        for (auto& r : next) r.tight = ddetail::tight_set(r.v, processed, 1e-7);
        rays = std::move(next);
    }

    // Canonical form: unit rows (already), dedup, lexicographic order.
    std::vector<Vector> facets;
    for (const auto& r : rays) {
        bool dup = false;
        for (const auto& f : facets)
            if ((f - r.v).cwiseAbs().maxCoeff() < 1e-9) { dup = true; break; }
        if (!dup) facets.push_back(r.v);
    }
    std::sort(facets.begin(), facets.end(), [](const Vector& a, const Vector& b) {
        for (int i = 0; i < a.size(); ++i) {
            if (a[i] < b[i] - 1e-12) return true;
            if (a[i] > b[i] + 1e-12) return false;
        }
        return false;
    });
    Matrix h(static_cast<int>(facets.size()), k);
    for (std::size_t i = 0; i < facets.size(); ++i) h.row(static_cast<int>(i)) = facets[i];
    return h;
}

// Minimal generating subset: a vector is dropped iff it is a nonnegative
// combination of the remaining ones (small feasibility LP per candidate).
inline std::vector<Vector> extreme_rays(const std::vector<Vector>& coords,
                                        double tol = 1e-9) {
    if (coords.empty()) return {};
    const int k = static_cast<int>(coords.front().size());
    std::vector<Vector> kept;
    for (const auto& v : coords) {
        if (v.norm() < tol) continue;  // origin adds nothing to the cone
        bool dup = false;
        for (const auto& w : kept) {
            const Vector a = v / v.norm(), b = w / w.norm();
            if ((a - b).cwiseAbs().maxCoeff() < 1e-9) { dup = true; break; }
        }
        if (!dup) kept.push_back(v);
    }
    for (std::size_t i = 0; i < kept.size();) {
        Matrix a(k, static_cast<int>(kept.size() - 1));
        int col = 0;
        for (std::size_t j = 0; j < kept.size(); ++j)
            if (j != i) a.col(col++) = kept[j];
        if (kept.size() > 1 && lp_feasible(a, kept[i]))
            kept.erase(kept.begin() + static_cast<long>(i));
        else
            ++i;
    }
    return kept;
}

struct AccessibleFragment {
    std::vector<Vector> state_coords;   // in R^{dim span(states)}
    std::vector<Vector> effect_coords;  // in R^{dim span(effects)}
    Matrix I_states;                    // V x dim span(states)
    Matrix I_effects;                   // V x dim span(effects)
    Matrix H_states;                    // facets of Cone(states)
    Matrix H_effects;                   // facets of Cone(effects)
};

// Projects a fragment onto the subspaces its states and effects span and
// enumerates both cone facet matrices. Facet enumeration runs on the extreme
// rays only (the cone is unchanged).
inline AccessibleFragment accessible(const GptFragment& frag,
                                     bool reduce_to_extreme_rays = true) {
    std::vector<Vector> state_vecs, effect_vecs;
    for (const auto& s : frag.states) state_vecs.push_back(s.coords);
    for (const auto& e : frag.effects) effect_vecs.push_back(e.coords);

    const SpanBasis sb = span_basis(state_vecs);
    const SpanBasis eb = span_basis(effect_vecs);

    AccessibleFragment acc;
    acc.I_states = sb.inclusion;
    acc.I_effects = eb.inclusion;
    acc.state_coords = sb.coords;
    acc.effect_coords = eb.coords;

    const auto facet_input = [&](const std::vector<Vector>& c) {
        return reduce_to_extreme_rays ? extreme_rays(c) : c;
    };
    acc.H_states = cone_facets(facet_input(acc.state_coords));
    acc.H_effects = cone_facets(facet_input(acc.effect_coords));
    return acc;
}

}  // namespace contextlab

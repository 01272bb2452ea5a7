#include "contextlab/geometry.hpp"

#include <doctest.h>

#include <random>

#include "contextlab/pom.hpp"
#include "oracles.hpp"

using namespace contextlab;

namespace {

std::vector<Vector> pom3_state_coords(double theta) {
    const PomScenario sc = pom3_scenario(theta);
    std::vector<Vector> out;
    for (const auto& s : sc.fragment.states) out.push_back(s.coords);
    return out;
}

}  // namespace

TEST_CASE("span_basis recovers the numerical span dimension") {
    CHECK(span_basis(pom3_state_coords(M_PI / 4.0)).inclusion.cols() == 4);
    CHECK(span_basis(pom3_state_coords(0.0)).inclusion.cols() == 2);
    CHECK(span_basis(pom3_state_coords(M_PI / 2.0)).inclusion.cols() == 3);

    const Vector single = pom3_state_coords(0.0).front();
    CHECK(span_basis({single}).inclusion.cols() == 1);

    CHECK_THROWS_AS(span_basis({Vector::Zero(4)}), DegenerateSpan);
}

TEST_CASE("span_basis inclusion maps are isometries reproducing the inputs") {
    const auto vecs = pom3_state_coords(0.9);
    const SpanBasis sb = span_basis(vecs);
    const Matrix gram = sb.inclusion.transpose() * sb.inclusion;
    CHECK((gram - Matrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff() < 1e-10);
    for (std::size_t i = 0; i < vecs.size(); ++i)
        CHECK((sb.inclusion * sb.coords[i] - vecs[i]).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("cone_facets on simple cones") {
    // 2D cone spanned by (1,0) and (1,1): facets are y >= 0 and x - y >= 0.
    std::vector<Vector> rays = {(Vector(2) << 1, 0).finished(),
                                (Vector(2) << 1, 1).finished()};
    const Matrix h = cone_facets(rays);
    REQUIRE(h.rows() == 2);
    const Matrix expected = testing::brute_force_facets(rays);
    CHECK((h - expected).cwiseAbs().maxCoeff() < 1e-9);

    // Cone over the unit square at height 1: 4 facets.
    std::vector<Vector> square;
    for (double x : {0.0, 1.0})
        for (double y : {0.0, 1.0})
            square.push_back((Vector(3) << x, y, 1).finished());
    CHECK(cone_facets(square).rows() == 4);

    // Not full dimensional.
    std::vector<Vector> flat = {(Vector(3) << 1, 0, 0).finished(),
                                (Vector(3) << 0, 1, 0).finished()};
    CHECK_THROWS_AS(cone_facets(flat), NotFullDimensional);
}

TEST_CASE("theta-family state cone has 6 facets away from the endpoints") {
    for (double theta : {0.3, M_PI / 4.0, 1.2}) {
        const SpanBasis sb = span_basis(pom3_state_coords(theta));
        REQUIRE(sb.inclusion.cols() == 4);
        CHECK(cone_facets(sb.coords).rows() == 6);
    }
    // Degenerate endpoints collapse the span.
    CHECK(span_basis(pom3_state_coords(0.0)).inclusion.cols() < 4);
    CHECK(span_basis(pom3_state_coords(M_PI / 2.0)).inclusion.cols() < 4);
}

TEST_CASE("duality round trip") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const SpanBasis sb = span_basis(pom3_state_coords(0.8));
    const Matrix h = cone_facets(sb.coords);

    for (const auto& g : sb.coords)
        CHECK((h * g).minCoeff() > -1e-9);

    // Random nonnegative combination stays inside.
    Vector combo = Vector::Zero(4);
    for (const auto& g : sb.coords) combo += std::abs(u(rng)) * g;
    CHECK((h * combo).minCoeff() > -1e-9);

    // A generator pushed across a facet leaves the cone.
    const Vector outside = sb.coords.front() - 2.0 * h.row(0).transpose() *
                                                   (h * sb.coords.front()).maxCoeff();
    CHECK((h * outside).minCoeff() < -1e-9);
}

TEST_CASE("cone_facets matches the exhaustive oracle on random cones") {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> g(0.0, 1.0);
    std::uniform_int_distribution<int> dim(2, 4);
    std::uniform_int_distribution<int> count(3, 12);
    int done = 0;
    while (done < 50) {
        const int k = dim(rng);
        const int n = count(rng);
        std::vector<Vector> gens;
        for (int i = 0; i < n; ++i) {
            Vector v(k);
            for (int j = 0; j < k; ++j) v[j] = g(rng);
            v[0] = std::abs(v[0]) + 0.1;  // keep the cone pointed
            gens.push_back(v);
        }
        Matrix dd;
        try {
            dd = cone_facets(gens);
        } catch (const NotFullDimensional&) {
            continue;
        }
        const Matrix oracle = testing::brute_force_facets(gens);
        REQUIRE(dd.rows() == oracle.rows());
        CHECK((dd - oracle).cwiseAbs().maxCoeff() < 1e-7);
        ++done;
    }
}

TEST_CASE("extreme_rays drops interior and duplicate generators") {
    std::vector<Vector> square;
    for (double x : {0.0, 1.0})
        for (double y : {0.0, 1.0})
            square.push_back((Vector(3) << x, y, 1).finished());
    Vector barycenter = Vector::Zero(3);
    for (const auto& v : square) barycenter += 0.25 * v;
    auto with_center = square;
    with_center.push_back(barycenter);
    CHECK(extreme_rays(with_center).size() == 4);

    // All 8 cuboid vertices are extreme.
    const SpanBasis sb = span_basis(pom3_state_coords(M_PI / 4.0));
    CHECK(extreme_rays(sb.coords).size() == 8);

    std::vector<Vector> dup = {(Vector(2) << 1, 1).finished(),
                               (Vector(2) << 2, 2).finished()};
    CHECK(extreme_rays(dup).size() == 1);
}

TEST_CASE("accessible fragment reproduces probabilities and cone membership") {
    const PomScenario sc = pom3_scenario(0.6);
    const AccessibleFragment acc = accessible(sc.fragment);

    const Matrix cross = acc.I_effects.transpose() * acc.I_states;
    for (std::size_t p = 0; p < sc.fragment.states.size(); ++p)
        for (std::size_t e = 0; e < sc.fragment.effects.size(); ++e) {
            const double direct = probability(sc.fragment.states[p], sc.fragment.effects[e]);
            const double via = acc.effect_coords[e].dot(cross * acc.state_coords[p]);
            CHECK(std::abs(direct - via) < 1e-10);
        }
    for (const auto& v : acc.state_coords)
        CHECK((acc.H_states * v).minCoeff() > -1e-9);
    for (const auto& w : acc.effect_coords)
        CHECK((acc.H_effects * w).minCoeff() > -1e-9);
}

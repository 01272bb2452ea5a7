#include "contextlab/lp.hpp"

#include <doctest.h>

using namespace contextlab;

TEST_CASE("simplex solves a textbook LP") {
    // min -x - y s.t. x + y + s1 = 4, x + 3y + s2 = 6, all >= 0.
    Eigen::MatrixXd a(2, 4);
    a << 1, 1, 1, 0,
         1, 3, 0, 1;
    Eigen::VectorXd b(2);
    b << 4, 6;
    Eigen::VectorXd c(4);
    c << -1, -1, 0, 0;
    const LpResult r = solve_lp(a, b, c);
    REQUIRE(r.status == LpStatus::optimal);
    CHECK(r.objective == doctest::Approx(-4.0));  // both constraints bind
    CHECK(r.x[0] + r.x[1] == doctest::Approx(4.0));
    CHECK(r.x[0] + 3.0 * r.x[1] <= 6.0 + 1e-9);
}

TEST_CASE("simplex detects infeasibility") {
    Eigen::MatrixXd a(2, 1);
    a << 1, 1;
    Eigen::VectorXd b(2);
    b << 1, 2;  // x = 1 and x = 2 simultaneously
    Eigen::VectorXd c(1);
    c << 0;
    CHECK(solve_lp(a, b, c).status == LpStatus::infeasible);
}

TEST_CASE("simplex detects unboundedness") {
    // min -x s.t. x - y = 0: x can grow without bound.
    Eigen::MatrixXd a(1, 2);
    a << 1, -1;
    Eigen::VectorXd b(1);
    b << 0;
    Eigen::VectorXd c(2);
    c << -1, 0;
    CHECK(solve_lp(a, b, c).status == LpStatus::unbounded);
}

TEST_CASE("simplex handles redundant rows and negative rhs") {
    Eigen::MatrixXd a(3, 3);
    a << 1, 1, 0,
         2, 2, 0,   // duplicate of row 1 (scaled)
        -1, 0, 1;
    Eigen::VectorXd b(3);
    b << 2, 4, -1;
    Eigen::VectorXd c(3);
    c << 1, 2, 3;
    const LpResult r = solve_lp(a, b, c);
    REQUIRE(r.status == LpStatus::optimal);
    CHECK((a * r.x - b).cwiseAbs().maxCoeff() < 1e-9);
    CHECK(r.x.minCoeff() > -1e-12);
    CHECK(r.objective == doctest::Approx(3.0));  // x = (1, 1, 0)
}

TEST_CASE("lp_feasible on cone membership queries") {
    Eigen::MatrixXd gens(2, 2);
    gens << 1, 1,
            0, 1;
    Eigen::VectorXd inside(2), outside(2);
    inside << 2, 1;   // 1*(1,0) + 1*(1,1)
    outside << -1, 0;
    CHECK(lp_feasible(gens, inside));
    CHECK(!lp_feasible(gens, outside));
}

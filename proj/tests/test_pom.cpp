#include "contextlab/pom.hpp"

#include <doctest.h>

#include <cmath>

using namespace contextlab;

namespace {

double closed_form_s3(double theta) {
    return 0.5 + (std::sqrt(2.0) * std::sin(theta) + std::cos(theta)) / 6.0;
}

}  // namespace

TEST_CASE("pom3_scenario geometry") {
    const PomScenario eq = pom3_scenario(M_PI / 2.0);
    CHECK(eq.fragment.states.size() == 8);
    CHECK(eq.effect_keys.size() == 6);
    for (const auto& st : eq.fragment.states) {
        CHECK(std::abs(st.coords[1]) == doctest::Approx(0.5));
        CHECK(std::abs(st.coords[2]) == doctest::Approx(0.5));
        CHECK(std::abs(st.coords[3]) < 1e-14);
    }

    // theta = 0 collapses onto the Z eigenstates.
    const PomScenario poles = pom3_scenario(0.0);
    for (const auto& st : poles.fragment.states) {
        CHECK(std::abs(st.coords[1]) < 1e-14);
        CHECK(std::abs(st.coords[2]) < 1e-14);
        CHECK(std::abs(st.coords[3]) == doctest::Approx(1.0 / std::sqrt(2.0)));
    }

    // Perfect cube at tan(theta) = sqrt(2).
    const PomScenario cube = pom3_scenario(std::atan(std::sqrt(2.0)));
    for (const auto& st : cube.fragment.states)
        for (int i = 1; i < 4; ++i)
            CHECK(std::abs(st.coords[i]) * std::sqrt(2.0) ==
                  doctest::Approx(1.0 / std::sqrt(3.0)));

    CHECK_THROWS_AS(pom3_scenario(2.0), InvalidParameter);
}

TEST_CASE("pom2_scenario is the optimal 2-to-1 configuration") {
    const PomScenario sc = pom2_scenario();
    CHECK(sc.effect_keys.size() == 4);
    CHECK(success_rate(sc) == doctest::Approx((1.0 + 1.0 / std::sqrt(2.0)) / 2.0));
    CHECK(parity_oblivious_check(sc).empty());
}

TEST_CASE("success_rate matches the closed form across the theta grid") {
    CHECK(success_rate(pom3_scenario(0.0)) == doctest::Approx(2.0 / 3.0));
    CHECK(success_rate(pom3_scenario(std::atan(std::sqrt(2.0)))) ==
          doctest::Approx((1.0 + 1.0 / std::sqrt(3.0)) / 2.0));
    CHECK(success_rate(pom3_scenario(M_PI / 2.0)) ==
          doctest::Approx(0.5 + std::sqrt(2.0) / 6.0));

    for (int i = 0; i < 200; ++i) {
        const double theta = (M_PI / 2.0) * i / 199.0;
        CHECK(std::abs(success_rate(pom3_scenario(theta)) - closed_form_s3(theta)) < 1e-10);
    }
}

TEST_CASE("success rate peaks at tan(theta) = sqrt(2)") {
    double best_theta = 0.0, best_s = 0.0;
    for (int i = 0; i < 400; ++i) {
        const double theta = (M_PI / 2.0) * i / 399.0;
        const double s = closed_form_s3(theta);
        if (s > best_s) { best_s = s; best_theta = theta; }
    }
    CHECK(std::abs(best_theta - std::atan(std::sqrt(2.0))) < (M_PI / 2.0) / 399.0 + 1e-12);
}

TEST_CASE("parity-obliviousness holds for the family and detects tampering") {
    for (double theta : {0.0, 0.4, 1.0, M_PI / 2.0})
        CHECK(parity_oblivious_check(pom3_scenario(theta)).empty());

    PomScenario tampered = pom3_scenario(0.8);
    tampered.fragment.states[0].coords = tampered.fragment.max_mixed.coords;
    CHECK(!parity_oblivious_check(tampered).empty());
}

TEST_CASE("analytic robustness and depolarized success") {
    CHECK(analytic_robustness(2.0 / 3.0, 3) == doctest::Approx(0.0));
    CHECK(analytic_robustness((1.0 + 1.0 / std::sqrt(3.0)) / 2.0, 3) ==
          doctest::Approx(1.0 - 1.0 / std::sqrt(3.0)));
    CHECK(analytic_robustness((1.0 + 1.0 / std::sqrt(2.0)) / 2.0, 2) ==
          doctest::Approx(1.0 - 1.0 / std::sqrt(2.0)));
    CHECK_THROWS_AS(analytic_robustness(0.4, 3), InvalidParameter);

    CHECK(depolarized_success(0.77, 0.0) == doctest::Approx(0.77));
    CHECK(depolarized_success(0.77, 1.0) == doctest::Approx(0.5));
    const double sq3 = (1.0 + 1.0 / std::sqrt(3.0)) / 2.0;
    CHECK(depolarized_success(sq3, 1.0 - 1.0 / std::sqrt(3.0)) ==
          doctest::Approx(2.0 / 3.0));
}

TEST_CASE("success of an explicitly depolarised scenario matches Eq-style mixing") {
    const double r = 0.3;
    PomScenario sc = pom3_scenario(0.9);
    const double s = success_rate(sc);
    for (auto& st : sc.fragment.states)
        st.coords = (1.0 - r) * st.coords + r * sc.fragment.max_mixed.coords;
    CHECK(success_rate(sc) == doctest::Approx(depolarized_success(s, r)).epsilon(1e-10));
}

TEST_CASE("bounds and max_encodable_bits") {
    CHECK(bounds(3).first == doctest::Approx(2.0 / 3.0));
    CHECK(bounds(3).second == doctest::Approx((1.0 + 1.0 / std::sqrt(3.0)) / 2.0));
    CHECK(bounds(2).first == doctest::Approx(0.75));
    CHECK(bounds(1).first == doctest::Approx(1.0));
    CHECK(bounds(1).second == doctest::Approx(1.0));

    CHECK(max_encodable_bits(0.5) == 3);
    CHECK(max_encodable_bits(2.0 / 3.0) == 8);
    CHECK(max_encodable_bits(0.1) == 1);
}

TEST_CASE("hemisphere fragment shape") {
    const GptFragment frag = hemisphere_fragment(4);
    CHECK(frag.states.size() == 8);
    // 8 projector effects plus 0 and u from augmentation; complements pair up.
    CHECK(frag.effects.size() == 10);
    CHECK_THROWS_AS(hemisphere_fragment(1), InvalidParameter);
}

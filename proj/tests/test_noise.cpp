#include "contextlab/noise.hpp"

#include <doctest.h>

#include <random>

using namespace contextlab;

TEST_CASE("depolarising map sends every state to mu") {
    const NoiseMap d = depolarising_map(qubit_max_mixed(), qubit_unit_effect());
    // Rank-1 matrix with a single nonzero entry 1 at (0, 0).
    Matrix expected = Matrix::Zero(4, 4);
    expected(0, 0) = 1.0;
    CHECK((d.matrix - expected).cwiseAbs().maxCoeff() < 1e-12);

    const GptVector zero_ket = vectorize_state(qubit_density(0, 0, 1));
    CHECK((d.matrix * zero_ket.coords - qubit_max_mixed().coords).cwiseAbs().maxCoeff() < 1e-12);

    // Transpose action fixes the unit effect (unitality).
    CHECK((d.matrix.transpose() * qubit_unit_effect().coords -
           qubit_unit_effect().coords).cwiseAbs().maxCoeff() < 1e-12);

    GptVector bad_mu = qubit_max_mixed();
    bad_mu.coords *= 2.0;
    CHECK_THROWS_AS(depolarising_map(bad_mu, qubit_unit_effect()), InvalidNoiseDefinition);
}

TEST_CASE("dephasing map along named axes") {
    const auto [zp, zm] = axis_effects(0.0, 0.0);
    const NoiseMap dz = dephasing_map({zp, zm}, qubit_unit_effect());
    Matrix expected = Matrix::Zero(4, 4);
    expected(0, 0) = 1.0;
    expected(3, 3) = 1.0;
    CHECK((dz.matrix - expected).cwiseAbs().maxCoeff() < 1e-12);

    const auto [xp, xm] = axis_effects(M_PI / 2.0, 0.0);
    const NoiseMap dx = dephasing_map({xp, xm}, qubit_unit_effect());
    Matrix expected_x = Matrix::Zero(4, 4);
    expected_x(0, 0) = 1.0;
    expected_x(1, 1) = 1.0;
    CHECK((dx.matrix - expected_x).cwiseAbs().maxCoeff() < 1e-12);

    // Z-dephasing keeps the identity and Z components only.
    Vector v(4);
    v << 0.7, 0.2, -0.4, 0.1;
    const Vector image = dz.matrix * v;
    CHECK(image[0] == doctest::Approx(0.7));
    CHECK(std::abs(image[1]) < 1e-14);
    CHECK(std::abs(image[2]) < 1e-14);
    CHECK(image[3] == doctest::Approx(0.1));
}

TEST_CASE("selfduality_check classifies the three failure modes") {
    const GptVector zp = vectorize_effect(qubit_density(0, 0, 1), "z+");
    const GptVector zm = vectorize_effect(qubit_density(0, 0, -1), "z-");
    const GptVector xp = vectorize_effect(qubit_density(1, 0, 0), "x+");

    CHECK(selfduality_check({zp, zm}, qubit_unit_effect()).pass());

    const auto incomplete = selfduality_check({zp}, qubit_unit_effect());
    CHECK(!incomplete.pass());
    CHECK(!incomplete.complete);

    const auto skew = selfduality_check({zp, xp}, qubit_unit_effect());
    CHECK(!skew.pass());
    CHECK(!skew.orthogonal);

    CHECK_THROWS_AS(dephasing_map({zp}, qubit_unit_effect()), NotSelfDualCompatible);
}

TEST_CASE("axis_effects reproduces the named axes and always passes the check") {
    const auto [zp, zm] = axis_effects(0.0, 0.0);
    CHECK((zp.coords - vectorize_effect(qubit_density(0, 0, 1)).coords).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((zm.coords - vectorize_effect(qubit_density(0, 0, -1)).coords).cwiseAbs().maxCoeff() < 1e-12);

    const auto [xp, xm] = axis_effects(M_PI / 2.0, 0.0);
    CHECK((xp.coords - vectorize_effect(qubit_density(1, 0, 0)).coords).cwiseAbs().maxCoeff() < 1e-12);

    const auto [yp, ym] = axis_effects(M_PI / 2.0, M_PI / 2.0);
    CHECK((yp.coords - vectorize_effect(qubit_density(0, 1, 0)).coords).cwiseAbs().maxCoeff() < 1e-12);

    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> ut(0.0, M_PI), up(0.0, 2.0 * M_PI);
    for (int i = 0; i < 25; ++i) {
        const auto [p, m] = axis_effects(ut(rng), up(rng));
        CHECK(selfduality_check({p, m}, qubit_unit_effect()).pass());
    }
}

TEST_CASE("dephasing maps are idempotent and unital for any axis") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> ut(0.0, M_PI), up(0.0, 2.0 * M_PI);
    for (int i = 0; i < 25; ++i) {
        const double t = ut(rng), p = up(rng);
        const auto [ep, em] = axis_effects(t, p);
        const NoiseMap d = dephasing_map({ep, em}, qubit_unit_effect());
        CHECK((d.matrix * d.matrix - d.matrix).cwiseAbs().maxCoeff() < 1e-10);
        CHECK((d.matrix.transpose() * qubit_unit_effect().coords -
               qubit_unit_effect().coords).cwiseAbs().maxCoeff() < 1e-12);

        // Dephased Bloch parts are parallel to the axis.
        Vector axis(3);
        axis << std::sin(t) * std::cos(p), std::sin(t) * std::sin(p), std::cos(t);
        const GptVector rho = vectorize_state(qubit_density(0.3, -0.5, 0.2));
        const Vector bloch = (d.matrix * rho.coords).tail(3);
        const Vector cross = bloch - bloch.dot(axis) * axis;
        CHECK(cross.norm() < 1e-10);
    }
}

TEST_CASE("apply_noise blends states toward the noise image") {
    const NoiseMap d = depolarising_map(qubit_max_mixed(), qubit_unit_effect());
    GptFragment frag = build_fragment({vectorize_state(qubit_density(0, 0, 1))},
                                      {vectorize_effect(qubit_density(0, 0, 1))},
                                      qubit_unit_effect(), qubit_max_mixed());
    const GptFragment noised = apply_noise(frag, d, 0.25);
    const Vector expected = 0.75 * frag.states[0].coords + 0.25 * qubit_max_mixed().coords;
    CHECK((noised.states[0].coords - expected).cwiseAbs().maxCoeff() < 1e-12);
    CHECK_THROWS_AS(apply_noise(frag, d, 1.5), InvalidParameter);
}

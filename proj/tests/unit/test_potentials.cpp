#include <doctest.h>

#include "skacz/potentials.hpp"
#include "skacz/rng.hpp"
#include "support/oracles.hpp"

using namespace skacz;

namespace {

std::vector<Potential> all_variants()
{
    return {Potential::squared_norm(), Potential::elastic_net(1.0), Potential::elastic_net(0.3),
            Potential::smoothed_elastic_net(1.0, 0.5), Potential::smoothed_elastic_net(0.7, 0.07)};
}

} // namespace

TEST_CASE("potential values")
{
    CHECK(value(Potential::elastic_net(1.0), Vector{1.0, -2.0}) == doctest::Approx(5.5));
    CHECK(value(Potential::squared_norm(), Vector{3.0, 4.0}) == doctest::Approx(12.5));
    CHECK(value(Potential::smoothed_elastic_net(1.0, 0.5), Vector{0.25}) == doctest::Approx(0.09375));
    // |x| > eps branch: 1 * (2 - 0.25) + 2
    CHECK(value(Potential::smoothed_elastic_net(1.0, 0.5), Vector{-2.0}) == doctest::Approx(3.75));

    CHECK_THROWS_AS(Potential::elastic_net(0.0), std::invalid_argument);
    CHECK_THROWS_AS(Potential::smoothed_elastic_net(1.0, -1.0), std::invalid_argument);
}

TEST_CASE("conjugate values")
{
    const auto en = Potential::elastic_net(1.0);
    CHECK(conjugate_value(en, Vector{3.0}) == doctest::Approx(2.0));
    CHECK(conjugate_value(en, Vector{0.5}) == 0.0);
    CHECK(conjugate_value(Potential::squared_norm(), Vector{1.0, 1.0}) == doctest::Approx(1.0));

    SUBCASE("agrees with a grid supremum")
    {
        for (const auto& f : all_variants()) {
            for (double xs : {-3.1, -1.2, -0.4, 0.0, 0.55, 1.7, 3.0}) {
                const double grid = skacz::testing::grid_conjugate_1d(
                    [&](double x) { return f.value_coord(x); }, xs, -10.0, 10.0, 1e-4);
                CHECK(conjugate_value(f, Vector{xs}) == doctest::Approx(grid).epsilon(1e-7));
            }
        }
    }
}

TEST_CASE("conjugate gradients")
{
    const auto en = Potential::elastic_net(1.0);
    CHECK(conjugate_gradient(en, Vector{2.0, -3.0, 0.5}) == Vector{1.0, -2.0, 0.0});
    CHECK(conjugate_gradient(Potential::squared_norm(), Vector{2.0, -3.0}) == Vector{2.0, -3.0});

    const auto sm = Potential::smoothed_elastic_net(1.0, 0.5);
    CHECK(conjugate_gradient(sm, Vector{0.6})[0] == doctest::Approx(0.2).epsilon(1e-14));

    // Independent route: invert f_eps'(x) = x + lambda min(1, |x|/eps) sign(x) by bisection.
    for (double xs : {-4.0, -1.5, -0.6, 0.1, 0.6, 1.49, 1.51, 5.0}) {
        const double x = skacz::testing::bisect_increasing(
            [](double v) { return v + 1.0 * std::min(1.0, std::abs(v) / 0.5) * sign(v); }, xs, -10.0, 10.0);
        CHECK(sm.conjugate_gradient_coord(xs) == doctest::Approx(x).epsilon(1e-12));
    }
}

TEST_CASE("canonical subgradients")
{
    const auto en = Potential::elastic_net(1.0);
    CHECK(subgradient(en, Vector{2.0, 0.0}) == Vector{3.0, 0.0});
    CHECK(subgradient(Potential::elastic_net(4.2), Vector{0.0, 0.0}) == Vector{0.0, 0.0});
    CHECK(subgradient(Potential::squared_norm(), Vector{1.0, -1.0}) == Vector{1.0, -1.0});

    Rng rng(5);
    for (const auto& f : all_variants()) {
        for (int trial = 0; trial < 200; ++trial) {
            Vector x = skacz::testing::random_vector(3, rng);
            if (trial % 5 == 0)
                x[1] = 0.0;
            const Vector g = subgradient(f, x);
            const Vector y = skacz::testing::random_vector(3, rng, 2.0);
            double lin = value(f, x);
            for (std::size_t i = 0; i < 3; ++i)
                lin += g[i] * (y[i] - x[i]);
            CHECK(value(f, y) >= lin - 1e-12);
        }
    }
}

TEST_CASE("smoothed gradient matches finite differences")
{
    const auto sm = Potential::smoothed_elastic_net(0.8, 0.3);
    Rng rng(6);
    int checked = 0;
    while (checked < 200) {
        const double x = 3.0 * rng.normal();
        if (std::abs(std::abs(x) - 0.3) < 1e-3)
            continue;
        const double h = 1e-6;
        const double fd = (sm.value_coord(x + h) - sm.value_coord(x - h)) / (2 * h);
        CHECK(std::abs(fd - sm.subgradient_coord(x)) <= 1e-5);
        ++checked;
    }
}

TEST_CASE("Bregman distance")
{
    const auto sq = Potential::squared_norm();
    CHECK(bregman_distance(sq, Vector{0.0, 0.0}, Vector{0.0, 0.0}, Vector{1.0, 1.0}) == doctest::Approx(1.0));

    const auto en = Potential::elastic_net(1.0);
    CHECK(bregman_distance(en, Vector{0.0}, Vector{0.0}, Vector{1.0}) == doctest::Approx(1.5));
    CHECK(bregman_distance(en, Vector{2.0}, Vector{3.0}, Vector{1.0}) == doctest::Approx(0.5));
    // Any x* in [-1, 1] is a subgradient at 0.
    CHECK(bregman_distance(en, Vector{0.0}, Vector{0.7}, Vector{1.0}) == doctest::Approx(0.8));

    CHECK_THROWS_AS(bregman_distance(en, Vector{2.0}, Vector{2.0}, Vector{1.0}), std::invalid_argument);
    CHECK_THROWS_AS(bregman_distance(en, Vector{0.0}, Vector{1.5}, Vector{1.0}), std::invalid_argument);
    CHECK(bregman_distance(en, Vector{1.0, -1.0}, Vector{2.0, -2.0}, Vector{1.0, -1.0}) == 0.0);
}

TEST_CASE("potential identities on random samples")
{
    Rng rng(7);
    for (const auto& f : all_variants()) {
        CAPTURE(to_string(f.kind()));
        for (int trial = 0; trial < 500; ++trial) {
            const Vector x = skacz::testing::random_vector(4, rng, 2.0);
            const Vector xs = subgradient(f, x);
            // Fenchel-Young equality.
            CHECK(std::abs(value(f, x) + conjugate_value(f, xs) - dot(xs, x)) <= 1e-10 * (1 + std::abs(value(f, x))));
            // grad f* inverts the subgradient map.
            const Vector back = conjugate_gradient(f, xs);
            CHECK(distance(back, x) <= 1e-10);
            // grad f* is 1-Lipschitz.
            const Vector u = skacz::testing::random_vector(4, rng, 2.0);
            const Vector v = skacz::testing::random_vector(4, rng, 2.0);
            CHECK(distance(conjugate_gradient(f, u), conjugate_gradient(f, v)) <= distance(u, v) + 1e-12);
            // D >= 1/2 ||x - y||^2.
            const Vector y = skacz::testing::random_vector(4, rng, 2.0);
            const double d = distance(x, y);
            CHECK(bregman_distance(f, x, xs, y) >= 0.5 * d * d - 1e-10);
        }
    }
}

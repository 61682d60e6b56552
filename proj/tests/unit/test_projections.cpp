#include <doctest.h>

#include <algorithm>

#include "skacz/oracle.hpp"
#include "skacz/projections.hpp"
#include "support/oracles.hpp"

using namespace skacz;
using skacz::testing::random_vector;

TEST_CASE("inexact hyperplane step")
{
    const auto sq = Potential::squared_norm();
    auto s = inexact_hyperplane_step(sq, DualState::zero(2), Vector{1.0, 0.0}, 1.0);
    CHECK(s.x == Vector{1.0, 0.0});

    const auto en = Potential::elastic_net(1.0);
    s = inexact_hyperplane_step(en, DualState::zero(2), Vector{1.0, 0.0}, 3.0);
    CHECK(s.xstar == Vector{3.0, 0.0});
    CHECK(s.x == Vector{2.0, 0.0});

    s = inexact_hyperplane_step(sq, DualState{{1.0, 0.0}, {1.0, 0.0}}, Vector{0.0, 2.0}, 4.0);
    CHECK(s.xstar == Vector{1.0, 2.0});
    CHECK(s.x == Vector{1.0, 2.0});

    CHECK_THROWS_AS(inexact_hyperplane_step(sq, DualState::zero(2), Vector{0.0, 0.0}, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(inexact_hyperplane_step(sq, DualState::zero(2), Vector{1.0}, 1.0), std::invalid_argument);
}

TEST_CASE("exact hyperplane linesearch examples")
{
    const auto en = Potential::elastic_net(1.0);
    auto r = exact_hyperplane_linesearch(en, DualState::zero(1), Vector{1.0}, 2.0);
    CHECK(r.t == doctest::Approx(-3.0).epsilon(1e-14));
    CHECK(r.state.xstar[0] == doctest::Approx(3.0));
    CHECK(r.state.x[0] == doctest::Approx(2.0));
    const double t_grid = grid_linesearch(en, Vector{0.0}, Vector{1.0}, 2.0, -10.0, 10.0, 1e-5);
    CHECK(std::abs(r.t - t_grid) <= 1e-5);

    const auto sq = Potential::squared_norm();
    r = exact_hyperplane_linesearch(sq, DualState{{2.0, 0.0}, {2.0, 0.0}}, Vector{1.0, 1.0}, 0.0);
    CHECK(r.t == doctest::Approx(1.0));
    CHECK(r.state.x == Vector{1.0, -1.0});

    // Already feasible: g'(0) = 0.
    const auto s = DualState::from_dual(en, Vector{2.5, -0.5});
    r = exact_hyperplane_linesearch(en, s, Vector{1.0, 1.0}, 1.5);
    CHECK(r.t == 0.0);
    CHECK(r.state.x == s.x);
    CHECK(r.state.xstar == s.xstar);

    CHECK_THROWS_AS(exact_hyperplane_linesearch(en, DualState::zero(2), Vector{0.0, 0.0}, 1.0),
                    std::invalid_argument);
}

TEST_CASE("elastic net linesearch returns the smallest minimizer on a flat piece")
{
    // x* = 0, a = 1, beta = 0: g(t) = 1/2 S_1(-t)^2 is zero on [-1, 1].
    const auto en = Potential::elastic_net(1.0);
    CHECK(hyperplane_linesearch(en, Vector{0.0}, Vector{1.0}, 0.0) == doctest::Approx(-1.0));
    CHECK(grid_linesearch(en, Vector{0.0}, Vector{1.0}, 0.0, -3.0, 3.0, 0.25) == doctest::Approx(-1.0));
}

TEST_CASE("elastic net slope is nondecreasing across breakpoints")
{
    Rng rng(31);
    for (int trial = 0; trial < 100; ++trial) {
        const double lambda = 0.1 + rng.uniform();
        const auto f = Potential::elastic_net(lambda);
        const Vector xs = random_vector(6, rng, 2.0);
        Vector a = random_vector(6, rng);
        a[trial % 6] = 0.0;
        const double beta = rng.normal();
        std::vector<double> breaks;
        for (std::size_t i = 0; i < 6; ++i)
            if (a[i] != 0.0) {
                breaks.push_back((xs[i] - lambda) / a[i]);
                breaks.push_back((xs[i] + lambda) / a[i]);
            }
        std::sort(breaks.begin(), breaks.end());
        double prev = -1e300;
        for (double t : breaks) {
            double h = 0.0;
            for (std::size_t i = 0; i < 6; ++i)
                h += a[i] * f.conjugate_gradient_coord(xs[i] - t * a[i]);
            const double gp = beta - h;
            CHECK(gp >= prev - 1e-12);
            prev = gp;
        }
    }
}

TEST_CASE("exact step is feasible and matches a grid search")
{
    Rng rng(32);
    const std::vector<Potential> fs{Potential::squared_norm(), Potential::elastic_net(0.7),
                                    Potential::smoothed_elastic_net(0.7, 0.2)};
    for (int trial = 0; trial < 60; ++trial) {
        const auto& f = fs[trial % 3];
        const std::size_t n = 1 + rng.below(3);
        const Vector a = random_vector(n, rng);
        const auto s = DualState::from_dual(f, random_vector(n, rng, 1.5));
        const double beta = 2.0 * rng.normal();
        const auto r = exact_hyperplane_linesearch(f, s, a, beta);
        CHECK(std::abs(dot(a, r.state.x) - beta) <= 1e-9 * (1 + std::abs(beta)));
        const double t_grid = grid_linesearch(f, s.xstar, a, beta, r.t - 0.5, r.t + 0.5, 1e-4);
        CHECK(std::abs(r.t - t_grid) <= 1e-4);
    }
}

TEST_CASE("enclosing half-space")
{
    const Vector a{1.0, 0.0};
    auto cut = enclosing_halfspace(a, ValueRange::point(1.0), Vector{3.0, 0.0});
    CHECK(cut.u == Vector{2.0, 0.0});
    CHECK(cut.beta == 2.0);

    const auto cut2 = enclosing_halfspace(a, ValueRange{0.0, 1.0}, Vector{3.0, 0.0});
    CHECK(cut2.u == cut.u);
    CHECK(cut2.beta == cut.beta);

    CHECK_THROWS_AS(enclosing_halfspace(a, ValueRange{0.0, 1.0}, Vector{0.5, 7.0}), std::invalid_argument);
    CHECK_THROWS_AS(enclosing_halfspace(Vector{0.0, 0.0}, ValueRange::point(1.0), Vector{3.0, 0.0}),
                    std::invalid_argument);

    SUBCASE("separates the point from the feasible set")
    {
        Rng rng(33);
        for (int trial = 0; trial < 200; ++trial) {
            const Vector row = random_vector(3, rng);
            const double b = rng.normal();
            const double delta = trial % 2 ? 0.0 : rng.uniform();
            const ValueRange q{b - delta, b + delta};
            Vector x = random_vector(3, rng, 3.0);
            const double ax = dot(row, x);
            if (q.contains(ax))
                continue;
            const auto c = enclosing_halfspace(row, q, x);
            const double w = ax - q.project(ax);
            CHECK(std::abs(dot(c.u, x) - c.beta - w * w) <= 1e-12 * (1 + std::abs(c.beta) + w * w));
            CHECK(dot(c.u, x) > c.beta);
            // A feasible y: shift a random point onto a value inside q.
            Vector y = random_vector(3, rng, 3.0);
            const double target = q.lo + rng.uniform() * (q.hi - q.lo);
            const double shift = (target - dot(row, y)) / norm_sq(row);
            for (std::size_t i = 0; i < 3; ++i)
                y[i] += shift * row[i];
            CHECK(dot(c.u, y) <= c.beta + 1e-9 * (1 + std::abs(c.beta)));
        }
    }
}

TEST_CASE("half-space Bregman step")
{
    const auto sq = Potential::squared_norm();
    const DualState feasible{{0.0, 0.0}, {0.0, 0.0}};
    auto r = halfspace_bregman_step(sq, feasible, Vector{1.0, 0.0}, 1.0, StepMode::Exact);
    CHECK(r.t == 0.0);
    CHECK(r.state.x == feasible.x);

    r = halfspace_bregman_step(sq, DualState{{2.0, 0.0}, {2.0, 0.0}}, Vector{1.0, 0.0}, 1.0, StepMode::Exact);
    CHECK(r.state.x == Vector{1.0, 0.0});
    CHECK(r.t == doctest::Approx(1.0));

    const auto en = Potential::elastic_net(1.0);
    r = halfspace_bregman_step(en, DualState::zero(1), Vector{-1.0}, -2.0, StepMode::Exact);
    CHECK(r.t == doctest::Approx(3.0));
    CHECK(r.state.xstar[0] == doctest::Approx(3.0));
    CHECK(r.state.x[0] == doctest::Approx(2.0));

    CHECK_THROWS_AS(halfspace_bregman_step(en, DualState::zero(1), Vector{0.0}, 1.0, StepMode::Exact),
                    std::invalid_argument);
}

TEST_CASE("decrease inequality for hyperplane and half-space steps")
{
    Rng rng(34);
    const std::vector<Potential> fs{Potential::squared_norm(), Potential::elastic_net(0.5),
                                    Potential::smoothed_elastic_net(0.5, 0.1)};
    for (int trial = 0; trial < 300; ++trial) {
        const auto& f = fs[trial % 3];
        const StepMode mode = trial % 2 ? StepMode::Exact : StepMode::Inexact;
        const bool halfspace = (trial / 2) % 2 == 1;
        const std::size_t n = 4;
        const Vector u = random_vector(n, rng);
        const Vector y = random_vector(n, rng, 2.0);
        // beta chosen so that y is on the hyperplane, or strictly inside the half-space.
        const double beta = dot(u, y) + (halfspace ? rng.uniform() : 0.0);
        const auto s = DualState::from_dual(f, random_vector(n, rng, 3.0));
        const double viol = dot(u, s.x) - beta;
        DualState next = s;
        if (halfspace) {
            next = halfspace_bregman_step(f, s, u, beta, mode).state;
            if (viol <= 0.0) {
                CHECK(next.xstar == s.xstar);
                continue;
            }
        } else if (mode == StepMode::Exact) {
            next = exact_hyperplane_linesearch(f, s, u, beta).state;
        } else {
            next = inexact_hyperplane_step(f, s, u, beta);
        }
        const double before = bregman_distance_unchecked(f, s.x, s.xstar, y);
        const double after = bregman_distance_unchecked(f, next.x, next.xstar, y);
        CHECK(after <= before - 0.5 * viol * viol / norm_sq(u) + 1e-9);
    }
}

TEST_CASE("constraint helpers")
{
    const Constraint h = Hyperplane{{1.0, 1.0}, 2.0};
    const Constraint iv = IntervalConstraint{{1.0, 0.0}, 1.0, 0.5};
    const Constraint hs = HalfSpace{{0.0, 1.0}, 0.0};
    CHECK(constraint_violation(h, Vector{0.0, 0.0}) == 2.0);
    CHECK(constraint_violation(iv, Vector{0.0, 9.0}) == 0.5);
    CHECK(constraint_violation(iv, Vector{1.2, 9.0}) == 0.0);
    CHECK(constraint_violation(hs, Vector{0.0, -1.0}) == 0.0);
    CHECK(constraint_violation(hs, Vector{0.0, 2.0}) == 2.0);
    CHECK_THROWS_AS(validate(Constraint{IntervalConstraint{{1.0}, 0.0, -1.0}}), std::invalid_argument);
    CHECK_THROWS_AS(validate(Constraint{Hyperplane{{0.0}, 0.0}}), std::invalid_argument);
}

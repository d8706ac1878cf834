#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fdit/rgg.hpp"
#include "fdit/sampling.hpp"
#include "fdit/state.hpp"

using namespace fdit;

TEST_CASE("euclidean_distance basics") {
    CHECK(euclidean_distance(StateVector{0, 0}, StateVector{0, 0}) == 0.0);
    CHECK(euclidean_distance(StateVector{0, 0}, StateVector{3, 4}) == doctest::Approx(5.0));
    CHECK_THROWS_AS(euclidean_distance(StateVector{0, 0}, StateVector{0, 0, 0}),
                    std::invalid_argument);
}

TEST_CASE("euclidean_distance matches per-coordinate accumulation oracle") {
    Rng rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        StateVector a = sample_uniform(8, rng);
        StateVector b = sample_uniform(8, rng);
        double sum_sq = 0.0;
        for (int i = 0; i < 8; ++i) sum_sq += (a[i] - b[i]) * (a[i] - b[i]);
        CHECK(euclidean_distance(a, b) == doctest::Approx(std::sqrt(sum_sq)).epsilon(1e-12));
    }
}

TEST_CASE("elliptical_distance examples") {
    CHECK(elliptical_distance(StateVector{0, 0}, StateVector{3, 4}, StateVector{1, 1}) ==
          doctest::Approx(5.0));
    // (3/3)^2 + (4/4)^2 = 2
    CHECK(elliptical_distance(StateVector{0, 0}, StateVector{3, 4}, StateVector{3, 4}) ==
          doctest::Approx(std::sqrt(2.0)));
    CHECK(elliptical_distance(StateVector{0.3, 0.7}, StateVector{0.3, 0.7},
                              StateVector{2, 9}) == 0.0);
    CHECK_THROWS_AS(elliptical_distance(StateVector{0, 0}, StateVector{1, 1},
                                        StateVector{1, 0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(elliptical_distance(StateVector{0, 0}, StateVector{1, 1},
                                        StateVector{1, -2}),
                    std::invalid_argument);
}

TEST_CASE("elliptical_distance symmetry and euclidean reduction") {
    Rng rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 2 + static_cast<int>(rng.below(7));
        StateVector a = sample_uniform(n, rng);
        StateVector b = sample_uniform(n, rng);
        StateVector v(n);
        for (auto& s : v) s = 0.1 + rng.uniform01();
        CHECK(elliptical_distance(a, b, v) == doctest::Approx(elliptical_distance(b, a, v))
                                                  .epsilon(1e-15));
        StateVector ones(n, 1.0);
        CHECK(std::abs(elliptical_distance(a, b, ones) - euclidean_distance(a, b)) <= 1e-12);
    }
}

TEST_CASE("unit_ball_measure closed forms") {
    CHECK(unit_ball_measure(1) == doctest::Approx(2.0));
    CHECK(unit_ball_measure(2) == doctest::Approx(std::numbers::pi));
    CHECK(unit_ball_measure(3) == doctest::Approx(4.0 / 3.0 * std::numbers::pi));
}

TEST_CASE("rgg_radius direct evaluation") {
    RggParams params{1.1, 1.001, 2};
    const double r = rgg_radius(100, 1.0, params);
    // Direct evaluation with lambda(B_{1,2}) = pi and ln(100).
    const double expected =
        2.0 * 1.1 * std::sqrt(1.5 * (1.0 / std::numbers::pi) * std::log(100.0) / 100.0);
    CHECK(r == doctest::Approx(expected).epsilon(1e-14));
    CHECK(std::abs(r - 0.3262) <= 1e-4);

    RggParams doubled{2.2, 1.001, 2};
    CHECK(rgg_radius(100, 1.0, doubled) == doctest::Approx(2.0 * r).epsilon(1e-15));

    CHECK_THROWS_AS(rgg_radius(1, 1.0, params), std::invalid_argument);
}

TEST_CASE("rgg_radius strictly decreases in q") {
    RggParams params{1.1, 1.001, 3};
    double prev = rgg_radius(3, 1.0, params);
    for (std::size_t q : {10u, 100u, 1000u}) {
        const double r = rgg_radius(q, 1.0, params);
        CHECK(r < prev);
        prev = r;
    }
}

TEST_CASE("rgg_k direct evaluations") {
    CHECK(rgg_k(200, RggParams{1.1, 1.001, 4}) == 19);  // 1.1*e*1.25*ln(200) ~ 19.80
    CHECK(rgg_k(2, RggParams{1.1, 1.001, 2}) == 3);     // 1.1*e*1.5*ln(2) ~ 3.11
    CHECK_THROWS_AS(rgg_k(1, RggParams{1.1, 1.001, 2}), std::invalid_argument);
}

TEST_CASE("rgg_k non-decreasing in q") {
    RggParams params{1.1, 1.001, 5};
    int prev = rgg_k(2, params);
    for (double logq = std::log(2.0); logq <= std::log(1e6); logq += 0.05) {
        const std::size_t q = static_cast<std::size_t>(std::exp(logq)) + 1;
        const int k = rgg_k(q, params);
        CHECK(k >= prev);
        prev = k;
    }
}

TEST_CASE("sample_uniform determinism and bounds") {
    Rng a(42), b(42);
    for (int i = 0; i < 100; ++i) {
        const StateVector xa = sample_uniform(6, a);
        const StateVector xb = sample_uniform(6, b);
        CHECK(xa == xb);  // bit-identical
        CHECK(in_unit_bounds(xa));
    }
}

TEST_CASE("sample_uniform quadrant balance") {
    Rng rng(3);
    int counts[4] = {0, 0, 0, 0};
    for (int i = 0; i < 10000; ++i) {
        const StateVector x = sample_uniform(2, rng);
        counts[(x[0] >= 0.5 ? 1 : 0) + (x[1] >= 0.5 ? 2 : 0)]++;
    }
    for (int c : counts) {
        CHECK(c >= 2300);
        CHECK(c <= 2700);
    }
}

TEST_CASE("informed_measure") {
    const StateVector a{0.1, 0.5};
    const StateVector b{0.9, 0.5};  // c_min = 0.8

    CHECK(informed_measure(InformedSet(a, b)) == 1.0);  // unbounded => hypercube volume
    // Ellipse area with semi-axes 0.5 and 0.3.
    CHECK(informed_measure(InformedSet(a, b, 1.0)) ==
          doctest::Approx(std::numbers::pi * 0.5 * 0.3).epsilon(1e-12));
    CHECK(informed_measure(InformedSet(a, b, 0.8)) == doctest::Approx(1e-12));
    CHECK(informed_measure(InformedSet(a, b, 50.0)) == 1.0);  // clamped to the hypercube

    CHECK_THROWS_AS(InformedSet(a, b, 0.5), std::invalid_argument);
}

TEST_CASE("sample_informed degenerates to uniform without an incumbent") {
    const InformedSet set(StateVector{0.2, 0.3, 0.4}, StateVector{0.7, 0.6, 0.5});
    Rng a(9), b(9);
    for (int i = 0; i < 20; ++i)
        CHECK(sample_informed(set, a) == sample_uniform(3, b));
}

TEST_CASE("informed samples are members of their hyperspheroid") {
    Rng rng(1234);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 2 + static_cast<int>(rng.below(7));
        StateVector fa = sample_uniform(n, rng);
        StateVector fb = sample_uniform(n, rng);
        const double c_min = euclidean_distance(fa, fb);
        const double c_best = c_min * (1.0 + rng.uniform01());
        const InformedSet set(fa, fb, c_best);
        for (int i = 0; i < 500; ++i) {
            const StateVector x = sample_informed(set, rng);
            CHECK(in_unit_bounds(x));
            CHECK(euclidean_distance(x, set.focus_a) + euclidean_distance(x, set.focus_b) <=
                  c_best + 1e-9);
        }
    }
}

TEST_CASE("near-degenerate informed set concentrates on the focal segment") {
    const double eps = 1e-6;
    const StateVector fa{0.2, 0.5, 0.5, 0.5};
    const StateVector fb{0.8, 0.5, 0.5, 0.5};
    const double c_min = euclidean_distance(fa, fb);
    const InformedSet set(fa, fb, c_min + eps);

    // Geometric bounds of the spheroid: lateral reach is the conjugate
    // semi-axis, longitudinal overshoot beyond the foci is (c_best - c_min)/2.
    const double lateral = 0.5 * std::sqrt((c_min + eps) * (c_min + eps) - c_min * c_min);
    Rng rng(77);
    for (int i = 0; i < 1000; ++i) {
        const StateVector x = sample_informed(set, rng);
        double perp_sq = 0.0;
        for (int d = 1; d < 4; ++d) perp_sq += (x[d] - 0.5) * (x[d] - 0.5);
        CHECK(std::sqrt(perp_sq) <= lateral + 1e-12);
        CHECK(x[0] >= fa[0] - 0.5 * eps - 1e-12);
        CHECK(x[0] <= fb[0] + 0.5 * eps + 1e-12);
        // Membership restated as the detour bound.
        CHECK(euclidean_distance(x, fa) + euclidean_distance(x, fb) <= c_min + eps + 1e-9);
    }
}

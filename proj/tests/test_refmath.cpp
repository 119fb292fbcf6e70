#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "pac/refmath.hpp"

using namespace pac;

TEST_CASE("logistic ode") {
    CHECK(ode_y(0.0, 0.3, 1.5) == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(ode_y(1.0, 0.5, 1.5) == doctest::Approx(1.0 / (1.0 + std::exp(-3.0))).epsilon(1e-14));
    CHECK(ode_y(50.0, 0.01, 1.5) == doctest::Approx(1.0));
    CHECK(ode_y(3.0, 0.0, 1.5) == 0.0);
    CHECK(ode_y(3.0, 1.0, 1.5) == 1.0);
    CHECK_THROWS_AS(ode_y(1.0, 1.2, 1.5), std::domain_error);

    for (double A : {0.001, 0.02, 0.4, 0.9})
        for (double t = 0.05; t < 4.0; t += 0.25) {
            const double h = 1e-5;
            const double y = ode_y(t, A, 1.5);
            const double d = (ode_y(t + h, A, 1.5) - ode_y(t - h, A, 1.5)) / (2 * h);
            const double rhs = 3.0 * y * (1 - y);
            CHECK(std::fabs(d - rhs) <= 1e-6 * std::max(rhs, 1e-12) + 1e-12);
        }
}

TEST_CASE("time change and proportion bound") {
    CHECK(t_of_s(0.0, 0.5, 13.0) == 0.0);
    CHECK(t_of_s(0.5, 0.5, 13.0) == doctest::Approx(std::log(13.0 / 6.75)).epsilon(1e-14));
    CHECK(t_of_s(0.5, 0.5, 13.0) == doctest::Approx(0.6554).epsilon(1e-4));
    CHECK(t_of_s(1.0, 0.5, 13.0) == doctest::Approx(std::log(26.0)).epsilon(1e-14));
    CHECK_THROWS_AS(t_of_s(0.5, 13.0, 13.0), std::domain_error);

    CHECK(prop_bound(1.0, 0.5, 13.0, 1.5) == doctest::Approx(0.9203).epsilon(1e-4));
    CHECK(prop_bound(0.0, 0.5, 13.0, 1.5) == doctest::Approx(6.566e-4).epsilon(1e-3));
    double prev = 0.0;
    for (int i = 0; i <= 20; ++i) {
        const double b = prop_bound(i / 20.0, 0.5, 13.0, 1.5);
        CHECK(b > prev);
        prev = b;
    }
}

TEST_CASE("product bracket closed forms") {
    const GammaSequence zero;
    // alpha = 1: prod (j+1)/j = (n+1)/k, the upper bound is attained
    const auto b1 = product_with_bounds(1.0, zero, 5, 100);
    CHECK(b1.product == doctest::Approx(20.2).epsilon(1e-14));
    CHECK(b1.asserted);
    CHECK(b1.ok);
    CHECK(b1.upper == doctest::Approx(20.2).epsilon(1e-14));
    CHECK(b1.lower == doctest::Approx(12.0).epsilon(1e-14));

    // alpha = 2: prod (j+2)/j = (n+1)(n+2) / (k(k+1))
    for (std::uint64_t k : {6u, 10u, 37u})
        for (std::uint64_t n : {k, k + 1, 500 + k}) {
            const auto b = product_with_bounds(2.0, zero, k, n);
            CHECK(b.product == doctest::Approx(double(n + 1) * (n + 2) / (k * (k + 1.0))).epsilon(1e-13));
            CHECK(b.ok);
        }

    CHECK_FALSE(product_with_bounds(2.0, zero, 5, 100).asserted);
    CHECK_THROWS_AS(product_with_bounds(-1.0, zero, 5, 10), std::domain_error);
}

TEST_CASE("product bracket holds for alpha >= 1") {
    for (double alpha : {1.0, 2.0}) {
        const auto r = bracket_grid_check(alpha, 100, 1000);
        CHECK(r.checked > 0);
        CHECK(r.failed == 0);
        CHECK(r.worst_margin >= -1e-12);
    }
}

TEST_CASE("upper bracket fails below alpha = 1") {
    // k = n = 3, alpha = 1/2: the product is 1 + 1/6 but
    // (n/k)^alpha (1 + 1/n)^alpha = sqrt(4/3).
    const auto b = product_with_bounds(0.5, GammaSequence{}, 3, 3);
    CHECK(b.asserted);
    CHECK(b.product == doctest::Approx(7.0 / 6).epsilon(1e-15));
    CHECK(b.upper == doctest::Approx(std::sqrt(4.0 / 3)).epsilon(1e-15));
    CHECK(b.product > b.upper);
    CHECK_FALSE(b.ok);

    const auto grid = bracket_grid_check(0.5, 100, 1000);
    CHECK(grid.upper_failed > 0);
    CHECK(grid.lower_failed == 0);

    // Bounding the sum of alpha/j by the integral from k-1 to n instead gives
    // (n/(k-1))^alpha, which does hold.
    for (double alpha : {0.25, 0.5, 0.75}) {
        for (std::uint64_t k = 3; k <= 60; ++k) {
            long double p = 1.0L;
            for (std::uint64_t n = k; n <= 2000; ++n) {
                p *= 1.0L + (long double)alpha / n;
                CHECK(double(p) <= std::pow(double(n) / double(k - 1), alpha));
            }
        }
    }
}

TEST_CASE("gamma perturbation widens the bracket") {
    GammaSequence g;
    g.kind = GammaSequence::Kind::inverse_square;
    g.scale = 0.5;
    CHECK(g(2) == 0.125);
    const double pi2_6 = M_PI * M_PI / 6;
    CHECK(g.tail_abs(1) == doctest::Approx(0.5 * pi2_6).epsilon(1e-13));
    double direct = 0;
    for (std::uint64_t j = 10; j < 2000000; ++j) direct += 1.0 / (double(j) * j);
    direct += 1.0 / 2000000.0;
    CHECK(g.tail_abs(10) == doctest::Approx(0.5 * direct).epsilon(1e-10));

    for (std::uint64_t k : {4u, 10u, 50u})
        for (std::uint64_t n : {k, 3 * k, std::uint64_t{1000}}) {
            const auto b = product_with_bounds(1.0, g, k, n);
            CHECK(b.ok);
            const auto plain = product_with_bounds(1.0, GammaSequence{}, k, n);
            CHECK(b.product > plain.product);
        }

    g.scale = -0.5;
    CHECK(product_with_bounds(2.0, g, 8, 400).ok);
}

TEST_CASE("marked boxes") {
    const auto law = marked_boxes_exact(2, 3, 1);
    CHECK(law.mean == doctest::Approx(10.0 / 9).epsilon(1e-14));
    CHECK(law.pmf[0] == doctest::Approx(1.0 / 9).epsilon(1e-14));

    for (std::uint32_t r = 1; r <= 4; ++r)
        for (std::uint32_t a = 2; a <= 6; ++a)
            for (std::uint32_t b = 1; b < a; ++b) {
                const auto e = marked_boxes_exact(r, a, b);
                const double closed = (a - b) * (1.0 - std::pow(1.0 - 1.0 / a, double(r)));
                CHECK(e.mean == doctest::Approx(closed).epsilon(1e-13));
                double total = 0;
                for (double p : e.pmf) total += p;
                CHECK(total == doctest::Approx(1.0).epsilon(1e-14));
                const auto iv = marked_boxes_bounds(r, a, b);
                CHECK(iv.lo <= e.mean + 1e-12);
                CHECK(e.mean <= iv.hi + 1e-12);
            }

    Engine rng(11);
    const auto e = marked_boxes_exact(4, 6, 2);
    std::vector<int> counts(5, 0);
    const int draws = 100000;
    for (int i = 0; i < draws; ++i) ++counts[marked_boxes(4, 6, 2, rng)];
    for (int m = 0; m <= 4; ++m) {
        const double p = e.pmf[m];
        CHECK(std::fabs(counts[m] / double(draws) - p) <= 5 * std::sqrt(p * (1 - p) / draws) + 1e-12);
    }
    CHECK(marked_boxes(5, 4, 4, rng) == 0);
    CHECK_THROWS_AS(marked_boxes_exact(2, 3, 3), std::invalid_argument);
    CHECK_THROWS_AS(marked_boxes_exact(20, 6, 1), std::length_error);
}

TEST_CASE("mean step of the multiplicity count") {
    CHECK(g_mean_step(1, 0, 1.5) == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(g_mean_step(0, 7, 1.5) == 0.0);
    // g (1 + (zeta - 1)/(k+1)) up to O(g^2 / k^2)
    for (std::uint64_t g : {1u, 5u, 20u})
        for (std::uint64_t k : {1000u, 10000u, 100000u}) {
            const double lin = g * (1.0 + 0.5 / (k + 1.0));
            const double bound = 2.0 * g * g / (4.0 * (k + 1.0) * (k + 1.0));
            CHECK(std::fabs(g_mean_step(g, k, 1.5) - lin) <= bound);
        }
}

TEST_CASE("fluid chain step") {
    const auto R3 = RDistribution::deterministic(3);
    Engine rng(5);
    const FluidState s{0.2, 0.01};
    const auto next = markov_step(s, R3, rng);
    CHECK(next.z == doctest::Approx(1.0 / 98).epsilon(1e-15));

    // y' - y z'/z is a multiple of z'
    for (int i = 0; i < 200; ++i) {
        const auto t = markov_step(s, R3, rng);
        const double steps = (t.y - s.y * t.z / s.z) / t.z;
        CHECK(steps == doctest::Approx(std::round(steps)).epsilon(1e-9));
        CHECK(steps >= -2.0);
        CHECK(steps <= 3.0);
    }
    CHECK_THROWS_AS(markov_step({0.2, 0.5}, R3, rng), std::domain_error);
}

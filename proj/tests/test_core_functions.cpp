#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include <holderlab/holder_function.hpp>
#include <holderlab/rng.hpp>

#include "test_util.hpp"

using namespace holderlab;

namespace {

SnowflakeEmbedding line_embedding() {
    SnowflakeEmbedding e;
    e.eval_into = [](double x, std::span<double> out) { out[0] = x; };
    e.dim = 1;
    e.alpha = 1.0;
    e.c2_estimate = 1.0;
    e.c1_estimate = 1.0;
    e.description = "identity line";
    return e;
}

SnowflakeEmbedding two_coordinate_embedding() {
    SnowflakeEmbedding e;
    e.eval_into = [](double x, std::span<double> out) {
        out[0] = std::cos(2.0 * 3.141592653589793 * x);
        out[1] = x * x;
    };
    e.dim = 2;
    e.alpha = 0.5;
    e.description = "test pair";
    return e;
}

}  // namespace

TEST_CASE("weierstrass evaluation matches closed forms") {
    WeierstrassParams takagi(PeriodicGenerator::triangle(), 2, 0.5, 30);
    CHECK(eval_weierstrass(takagi, 0.0) == 0.0);
    // only the k=0 term is nonzero at x = 1/2
    CHECK(eval_weierstrass(takagi, 0.5) == doctest::Approx(0.5).epsilon(1e-14));

    WeierstrassParams cos3 =
        WeierstrassParams::with_default_depth(PeriodicGenerator::cosine(), 3, 0.5);
    const double geometric = 1.0 / (1.0 - 1.0 / std::sqrt(3.0));
    CHECK(eval_weierstrass(cos3, 0.0) ==
          doctest::Approx(geometric).epsilon(1e-10));
    CHECK(geometric == doctest::Approx(2.3660).epsilon(1e-4));
}

TEST_CASE("weierstrass rejects invalid parameters") {
    CHECK_THROWS_AS(WeierstrassParams(PeriodicGenerator::triangle(), 1, 0.5, 10),
                    std::invalid_argument);
    CHECK_THROWS_AS(WeierstrassParams(PeriodicGenerator::triangle(), 2, 1.0, 10),
                    std::invalid_argument);
    CHECK_THROWS_AS(WeierstrassParams(PeriodicGenerator::triangle(), 2, 0.0, 10),
                    std::invalid_argument);
    WeierstrassParams ok(PeriodicGenerator::triangle(), 2, 0.5, 10);
    CHECK_THROWS_AS(eval_weierstrass(ok, -0.1), std::invalid_argument);
    CHECK_THROWS_AS(eval_weierstrass(ok, 1.1), std::invalid_argument);
}

TEST_CASE("tail bound matches direct tail summation") {
    WeierstrassParams p(PeriodicGenerator::triangle(), 2, 0.5, 20);
    const double bound = tail_bound(p);
    CHECK(bound == doctest::Approx(1.179e-3).epsilon(1e-3));
    CHECK(bound == doctest::Approx(testutil::tail_sum_oracle(0.5, 2, 0.5, 20)).epsilon(1e-12));

    WeierstrassParams zero(PeriodicGenerator::custom([](double) { return 0.0; }, 0.0, 0.0), 5,
                           0.3, 7);
    CHECK(tail_bound(zero) == 0.0);

    WeierstrassParams cos4(PeriodicGenerator::cosine(), 4, 0.5, 0);
    CHECK(tail_bound(cos4) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("default depth meets the 2^-40 truncation target") {
    for (int b : {2, 3, 7}) {
        auto p = WeierstrassParams::with_default_depth(PeriodicGenerator::cosine(), b, 0.35);
        CHECK(tail_bound(p) <= 0x1.0p-40);
        if (p.depth > 0) {
            WeierstrassParams shallower(p.generator, p.base, p.alpha, p.depth - 1);
            CHECK(tail_bound(shallower) > 0x1.0p-40);
        }
    }
}

TEST_CASE("truncation soundness: deeper sums stay within the tail bound") {
    Rng rng(41);
    for (int trial = 0; trial < 60; ++trial) {
        auto g = testutil::random_generator(rng);
        const int b = 2 + static_cast<int>(rng.below(4));
        const double alpha = rng.uniform(0.2, 0.9);
        const int depth = static_cast<int>(rng.below(30));
        const double x = rng.uniform();
        WeierstrassParams shallow(g, b, alpha, depth);
        WeierstrassParams deep(g, b, alpha, depth + 10);
        const double gap = std::abs(eval_weierstrass(deep, x) - eval_weierstrass(shallow, x));
        CHECK(gap <= tail_bound(shallow) * (1.0 + 1e-12) + 1e-15);
    }
}

TEST_CASE("periodic consistency at the endpoints") {
    Rng rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        auto g = testutil::random_generator(rng);
        WeierstrassParams p(g, 2 + static_cast<int>(rng.below(3)), rng.uniform(0.2, 0.8),
                            static_cast<int>(rng.below(25)));
        CHECK(eval_weierstrass(p, 0.0) == eval_weierstrass(p, 1.0));
    }
}

TEST_CASE("perturb: zero direction, 1-D inner product, componentwise oracle") {
    auto takagi = weierstrass_function(
        WeierstrassParams::with_default_depth(PeriodicGenerator::triangle(), 2, 0.5));

    Perturbation zero_dir({0.0}, line_embedding());
    auto unchanged = perturb(takagi, zero_dir);
    for (int i = 0; i <= 32; ++i) {
        const double x = i / 32.0;
        CHECK(unchanged(x) == doctest::Approx(takagi(x)).epsilon(1e-15));
    }

    Perturbation scaled({2.0}, line_embedding());
    auto shifted = perturb(zero_function(), scaled);
    CHECK(shifted(0.3) == doctest::Approx(0.6).epsilon(1e-15));

    Perturbation pair({1.0, -1.0}, two_coordinate_embedding());
    auto combined = perturb(takagi, pair);
    for (int i = 0; i <= 64; ++i) {
        const double x = i / 64.0;
        auto coords = pair.embedding(x);
        CHECK(combined(x) ==
              doctest::Approx(takagi(x) + coords[0] - coords[1]).epsilon(1e-13));
    }

    CHECK_THROWS_AS(Perturbation({1.0, 2.0, 3.0}, line_embedding()), std::invalid_argument);
}

TEST_CASE("perturbation linearity up to roundoff") {
    auto takagi = weierstrass_function(
        WeierstrassParams::with_default_depth(PeriodicGenerator::triangle(), 2, 0.4));
    auto emb = two_coordinate_embedding();
    Rng rng(99);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<double> t1 = {rng.uniform(-1, 1), rng.uniform(-1, 1)};
        std::vector<double> t2 = {rng.uniform(-1, 1), rng.uniform(-1, 1)};
        std::vector<double> t12 = {t1[0] + t2[0], t1[1] + t2[1]};
        auto once = perturb(takagi, Perturbation(t12, emb));
        auto twice = perturb(perturb(takagi, Perturbation(t1, emb)), Perturbation(t2, emb));
        for (int i = 0; i <= 16; ++i) {
            const double x = i / 16.0;
            CHECK(once(x) == doctest::Approx(twice(x)).epsilon(1e-12));
        }
    }
}

TEST_CASE("shear: trivial angles and the projection identity") {
    auto takagi = weierstrass_function(
        WeierstrassParams::with_default_depth(PeriodicGenerator::triangle(), 2, 0.5));

    auto at_right_angle = shear(takagi, 3.141592653589793 / 2.0);
    for (int i = 0; i <= 16; ++i) {
        const double x = i / 16.0;
        CHECK(at_right_angle(x) == doctest::Approx(takagi(x)).epsilon(1e-12));
    }

    auto diag = shear(zero_function(), 3.141592653589793 / 4.0);
    CHECK(diag(0.5) == doctest::Approx(0.5).epsilon(1e-12));

    CHECK_THROWS_AS(shear(takagi, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(shear(takagi, 3.141592653589793238463), std::invalid_argument);

    // sin(theta) * f^theta(x) == proj_theta(x, f(x)) on random inputs
    Rng rng(123);
    for (int trial = 0; trial < 200; ++trial) {
        const double theta = rng.uniform(0.05, 3.09);
        const double x = rng.uniform();
        auto sheared = shear(takagi, theta);
        const double lhs = std::sin(theta) * sheared(x);
        const double rhs = x * std::cos(theta) + takagi(x) * std::sin(theta);
        CHECK(std::abs(lhs - rhs) <= 1e-12);
    }

    // the shear at pi/3 identity on a grid
    auto sheared = shear(takagi, 3.141592653589793 / 3.0);
    double worst = 0.0;
    for (int i = 0; i <= 1000; ++i) {
        const double x = i / 1000.0;
        const double lhs = std::sin(3.141592653589793 / 3.0) * sheared(x);
        const double rhs =
            x * std::cos(3.141592653589793 / 3.0) + takagi(x) * std::sin(3.141592653589793 / 3.0);
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    CHECK(worst <= 1e-12);
}

TEST_CASE("holder constant estimator: exact ratios and stability") {
    CHECK(estimate_holder_constant(linear_function(), 256, 1.0) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(estimate_holder_constant(constant_function(3.5), 128, 0.5) == 0.0);

    auto takagi = weierstrass_function(
        WeierstrassParams::with_default_depth(PeriodicGenerator::triangle(), 2, 0.5));
    const double coarse = estimate_holder_constant(takagi, 1 << 12, 0.5);
    const double fine = estimate_holder_constant(takagi, 1 << 14, 0.5);
    CHECK(fine >= coarse * (1.0 - 1e-12));  // monotone nondecreasing in n
    CHECK(std::abs(fine / coarse - 1.0) <= 0.05);
}

TEST_CASE("estimates never exceed the analytic certificate") {
    Rng rng(2024);
    for (int trial = 0; trial < 20; ++trial) {
        auto g = testutil::random_generator(rng);
        const int b = 2 + static_cast<int>(rng.below(4));
        const double alpha = rng.uniform(0.25, 0.85);
        auto params = WeierstrassParams::with_default_depth(g, b, alpha);
        auto f = weierstrass_function(params);
        const double estimate = estimate_holder_constant(f, 512, alpha);
        CHECK(estimate <= *f.holder_constant * (1.0 + 1e-9) + 1e-9);
    }
}

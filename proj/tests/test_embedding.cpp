#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include <holderlab/embedding.hpp>
#include <holderlab/rng.hpp>

using namespace holderlab;

namespace {

SnowflakeEmbedding helix() {
    SnowflakeEmbedding e;
    e.eval_into = [](double x, std::span<double> out) {
        out[0] = std::cos(x);
        out[1] = std::sin(x);
    };
    e.dim = 2;
    e.alpha = 0.5;
    e.description = "helix control";
    return e;
}

SnowflakeEmbedding identity_line() {
    SnowflakeEmbedding e;
    e.eval_into = [](double x, std::span<double> out) { out[0] = x; };
    e.dim = 1;
    e.alpha = 1.0;
    e.description = "line";
    return e;
}

}  // namespace

TEST_CASE("lacunary construction dimensions and scale weights") {
    auto emb = build_lacunary(0.5, 4, 0x1.0p-12);
    CHECK(emb.dim == 15);  // K = ceil(log_4 4096) = 6, d = 2*7+1

    auto at_zero = emb(0.0);
    for (int k = 0; k <= 6; ++k) {
        CHECK(at_zero[2 * k] == doctest::Approx(std::pow(4.0, -0.5 * k)).epsilon(1e-14));
        CHECK(at_zero[2 * k + 1] == 0.0);
    }
    CHECK(at_zero[14] == 0.0);

    CHECK_THROWS_AS(build_lacunary(0.5, 4, 1e-30), std::invalid_argument);
    CHECK_THROWS_AS(build_lacunary(1.5, 4, 0.01), std::invalid_argument);
    CHECK_THROWS_AS(build_lacunary(0.5, 1, 0.01), std::invalid_argument);
}

TEST_CASE("lacunary sampled ratios respect the analytic upper constant") {
    auto emb = build_lacunary(0.4, 4, 0x1.0p-10);
    auto cert = certify_biholder(emb, 0.4, {1 << 10});
    CHECK(emb.c2_estimate.has_value());
    CHECK(cert.c2 <= *emb.c2_estimate);
    CHECK(cert.c1 > 0.0);
}

TEST_CASE("lacunary lower constant is stable across refinement") {
    auto emb = build_lacunary(0.4, 4, 0x1.0p-16);
    auto cert = certify_biholder(emb, 0.4, {1 << 12, 1 << 16});
    REQUIRE(cert.trace.size() == 2);
    const double coarse = cert.trace[0].second;
    const double fine = cert.trace[1].second;
    CHECK(fine > 0.0);
    CHECK(fine <= coarse * (1.0 + 1e-12));  // trace is nonincreasing
    CHECK(std::abs(fine / coarse - 1.0) <= 0.10);
}

TEST_CASE("certify detects the non-bi-Holder helix control") {
    auto cert = certify_biholder(helix(), 0.5, {1 << 10, 1 << 14});
    REQUIRE(cert.trace.size() == 2);
    // minimal-separation ratio behaves like |x-y|^{1/2}: a factor 4 collapse
    const double shrink = cert.trace[0].second / cert.trace[1].second;
    CHECK(shrink == doctest::Approx(4.0).epsilon(0.15));
}

TEST_CASE("certify on the identity is exact") {
    auto cert = certify_biholder(identity_line(), 1.0, {64, 256});
    CHECK(cert.c1 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(cert.c2 == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("koch: classical parameters, endpoints, bounded ratio spread") {
    const double alpha = std::log(3.0) / std::log(4.0);
    auto emb = build_koch(alpha);

    auto p0 = emb(0.0);
    auto p1 = emb(1.0);
    CHECK(p0[0] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(p0[1] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(p1[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(p1[1] == doctest::Approx(0.0).epsilon(1e-12));

    // first map endpoint: Phi(1/4) = (1/3, 0) for the classical curve
    auto qtr = emb(0.25);
    CHECK(qtr[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-10));
    CHECK(qtr[1] == doctest::Approx(0.0).epsilon(1e-10));

    double worst_lo = 1e300, worst_hi = 0.0;
    for (int k = 1; k <= 8; ++k) {
        const double gap = std::pow(4.0, -k);
        const int samples = 200;
        for (int i = 0; i < samples; ++i) {
            const double x = (1.0 - gap) * i / samples;
            auto a = emb(x);
            auto b = emb(x + gap);
            const double dist = std::max(std::abs(a[0] - b[0]), std::abs(a[1] - b[1]));
            const double ratio = dist / std::pow(gap, alpha);
            worst_lo = std::min(worst_lo, ratio);
            worst_hi = std::max(worst_hi, ratio);
        }
    }
    CHECK(worst_lo > 0.0);
    CHECK(worst_hi / worst_lo < 10.0);

    CHECK_THROWS_AS(build_koch(0.5), std::invalid_argument);
    CHECK_THROWS_AS(build_koch(1.0), std::invalid_argument);
}

TEST_CASE("koch self-similarity under the first map") {
    auto emb = build_koch(0.75);
    const double ratio = std::pow(4.0, -0.75);
    Rng rng(17);
    for (int trial = 0; trial < 50; ++trial) {
        const double x = rng.uniform();
        auto whole = emb(x);
        auto quarter = emb(x / 4.0);
        CHECK(std::abs(quarter[0] - ratio * whole[0]) <= 1e-9);
        CHECK(std::abs(quarter[1] - ratio * whole[1]) <= 1e-9);
    }
}

TEST_CASE("weierstrass embedding coordinates match the scalar series") {
    WeierstrassEmbeddingSpec spec({PeriodicGenerator::cosine()}, 2, 0.5);
    auto emb = build_weierstrass_embedding(spec);
    auto v = emb(0.0);
    CHECK(v[0] == doctest::Approx(1.0 / (1.0 - 1.0 / std::sqrt(2.0))).epsilon(1e-10));
    CHECK(v[0] == doctest::Approx(3.4142).epsilon(1e-4));
    CHECK_FALSE(emb.c1_estimate.has_value());
    CHECK_FALSE(emb.c2_estimate.has_value());

    // phase-shifted copy differs on a grid unless the period divides 1/4
    auto shifted = PeriodicGenerator::custom(
        [](double x) { return std::cos(2.0 * 3.141592653589793 * (x + 0.25)); }, 6.2832, 1.0,
        "shifted cosine");
    WeierstrassEmbeddingSpec two({PeriodicGenerator::cosine(), shifted}, 2, 0.5);
    auto emb2 = build_weierstrass_embedding(two);
    bool differs = false;
    for (int i = 0; i <= 64 && !differs; ++i) {
        auto w = emb2(i / 64.0);
        differs = std::abs(w[0] - w[1]) > 1e-9;
    }
    CHECK(differs);
}

TEST_CASE("reverse-holder fraction: analytic, constant, Takagi-type") {
    const double expected = 0.75;  // |y|^{1/2} > 0.5 iff y > 0.25
    CHECK(reverse_holder_fraction(linear_function(), 0.5, 0.5, 0.0, 0.0, 1.0, 1 << 12) ==
          doctest::Approx(expected).epsilon(1e-3));

    CHECK(reverse_holder_fraction(constant_function(2.0), 0.5, 0.1, 0.5, 0.0, 1.0, 256) == 0.0);

    auto takagi = weierstrass_function(
        WeierstrassParams::with_default_depth(PeriodicGenerator::triangle(), 2, 0.5));
    Rng rng(5);
    double min_fraction = 1.0;
    for (int trial = 0; trial < 64; ++trial) {
        const int scale = 2 + static_cast<int>(rng.below(5));
        const double len = std::pow(2.0, -scale);
        const double lo = rng.uniform(0.0, 1.0 - len);
        const double x = rng.uniform(lo, lo + len);
        min_fraction = std::min(min_fraction, reverse_holder_fraction(takagi, 0.5, 0.05, x, lo,
                                                                      lo + len, 512));
    }
    CHECK(min_fraction > 0.0);

    // scale covariance: doubling eps never increases the fraction
    for (int trial = 0; trial < 20; ++trial) {
        const double x = rng.uniform();
        const double eps = rng.uniform(0.01, 0.4);
        const double small = reverse_holder_fraction(takagi, 0.5, eps, x, 0.0, 1.0, 512);
        const double large = reverse_holder_fraction(takagi, 0.5, 2.0 * eps, x, 0.0, 1.0, 512);
        CHECK(large <= small + 1e-12);
    }

    CHECK_THROWS_AS(reverse_holder_fraction(takagi, 0.5, 0.1, 0.5, 0.7, 0.7, 64),
                    std::invalid_argument);
}

TEST_CASE("embedding search is elitist and deterministic") {
    SearchOptions fast;
    fast.working_grid = 128;
    fast.certify_grids = {256};

    auto single = search_embedding(2, 0.7, 2, 1, 99, fast);
    CHECK(single.history.size() == 1);

    auto a = search_embedding(2, 0.7, 2, 40, 7, fast);
    auto b = search_embedding(2, 0.7, 2, 40, 7, fast);
    REQUIRE(a.best.generators.size() == b.best.generators.size());
    for (std::size_t g = 0; g < a.best.generators.size(); ++g) {
        const auto& ta = a.best.generators[g].terms();
        const auto& tb = b.best.generators[g].terms();
        REQUIRE(ta.size() == tb.size());
        for (std::size_t i = 0; i < ta.size(); ++i) {
            CHECK(ta[i].cos_coeff == tb[i].cos_coeff);
            CHECK(ta[i].sin_coeff == tb[i].sin_coeff);
        }
    }
    CHECK(a.certificate.c1 == b.certificate.c1);

    double prev = -1.0;
    for (auto& [iter, best] : a.history) {
        CHECK(best >= prev);
        prev = best;
    }
    CHECK(a.history.back().second >= a.history.front().second);
}

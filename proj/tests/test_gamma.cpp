#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "netmimo/gamma_matching.hpp"
#include "test_support.hpp"

using namespace netmimo;

TEST_CASE("moment matching preserves mean and variance exactly") {
    SUBCASE("hand-worked pair") {
        GammaParams m = moment_match({{1.0, 1.0}, {2.0, 3.0}});
        // mean = 1 + 6 = 7, var = 1 + 18 = 19 -> k = 49/19, theta = 19/7.
        CHECK(m.shape == doctest::Approx(49.0 / 19.0).epsilon(1e-15));
        CHECK(m.scale == doctest::Approx(19.0 / 7.0).epsilon(1e-15));
        CHECK(m.mean() == doctest::Approx(7.0).epsilon(1e-15));
        CHECK(m.variance() == doctest::Approx(19.0).epsilon(1e-15));
    }
    SUBCASE("random component sets") {
        Rng rng(31);
        for (int trial = 0; trial < 200; ++trial) {
            int n = 1 + static_cast<int>(rng.uniform(0.0, 6.0));
            std::vector<GammaParams> comps(n);
            double mean = 0.0, var = 0.0;
            for (auto& c : comps) {
                c.shape = rng.uniform(0.1, 8.0);
                c.scale = std::exp(rng.uniform(-20.0, 2.0));
                mean += c.mean();
                var += c.variance();
            }
            GammaParams m = moment_match(comps);
            CHECK(m.mean() == doctest::Approx(mean).epsilon(1e-12));
            CHECK(m.variance() == doctest::Approx(var).epsilon(1e-12));
        }
    }
    SUBCASE("single component is a fixed point") {
        GammaParams m = moment_match({{3.5, 0.2}});
        CHECK(m.shape == doctest::Approx(3.5).epsilon(1e-15));
        CHECK(m.scale == doctest::Approx(0.2).epsilon(1e-15));
    }
}

TEST_CASE("matched shape is at most M*B, equality iff equal path losses") {
    int M = 5;
    SUBCASE("equal betas reach the bound") {
        GammaParams g = intended_channel_params({0.3, 0.3, 0.3, 0.3}, M);
        CHECK(g.shape == doctest::Approx(4.0 * M).epsilon(1e-14));
        CHECK(g.scale == doctest::Approx(0.3).epsilon(1e-14));
    }
    SUBCASE("unequal betas fall strictly below") {
        Rng rng(32);
        for (int trial = 0; trial < 100; ++trial) {
            int B = 2 + static_cast<int>(rng.uniform(0.0, 5.0));
            std::vector<double> betas(B);
            for (auto& b : betas) b = std::exp(rng.uniform(-25.0, 0.0));
            GammaParams g = intended_channel_params(betas, M);
            CHECK(g.shape <= M * B + 1e-12);
            double spread = 0.0;
            for (double b : betas) spread = std::max(spread, std::abs(b - betas[0]));
            if (spread > 1e-9 * betas[0]) CHECK(g.shape < M * B);
        }
    }
    SUBCASE("interference channel shares the matching rule") {
        GammaParams f = interference_channel_params({0.9, 0.1}, M);
        // k = M (1)^2 / 0.82, theta = 0.82.
        CHECK(f.shape == doctest::Approx(M / 0.82).epsilon(1e-13));
        CHECK(f.scale == doctest::Approx(0.82).epsilon(1e-13));
    }
}

TEST_CASE("projected-power parameter maps") {
    int M = 5, B = 4;
    double eta = 0.6;
    GammaParams g{18.0, 0.5};
    SUBCASE("signal keeps the scale and shrinks the shape by zeta/(MB)") {
        double zeta = M * B * (1.0 - eta) + 1.0;  // degrees of freedom left by ZF
        GammaParams s = signal_power_params(g, M, B, eta);
        CHECK(s.shape == doctest::Approx(g.shape * zeta / (M * B)).epsilon(1e-14));
        CHECK(s.scale == doctest::Approx(g.scale).epsilon(1e-14));
    }
    SUBCASE("one interfering beam takes a 1/(MB) shape slice") {
        GammaParams i = interference_beam_power_params(g, M, B);
        CHECK(i.shape == doctest::Approx(g.shape / (M * B)).epsilon(1e-14));
        CHECK(i.scale == doctest::Approx(g.scale).epsilon(1e-14));
    }
    SUBCASE("aggregate over eta*M*B beams") {
        GammaParams a = aggregate_interference_params(g, eta);
        CHECK(a.shape == doctest::Approx(eta * g.shape).epsilon(1e-14));
        CHECK(a.scale == doctest::Approx(g.scale).epsilon(1e-14));
    }
    SUBCASE("eta = 1 leaves a single degree of freedom per cluster") {
        GammaParams s = signal_power_params(g, M, B, 1.0);
        CHECK(s.shape == doctest::Approx(g.shape / (M * B)).epsilon(1e-14));
    }
}

TEST_CASE("decomposed surrogates have the intended first moments") {
    int M = 5;
    double eta = 0.6;
    std::vector<double> betas{0.5, 0.2, 0.05};
    double bsum = 0.75;
    int n = 60000;
    SUBCASE("shared-multiplier signal surrogate") {
        double bbar = 3.0;
        double varpi = (M * bbar * (1.0 - eta) + 1.0) / bbar;
        Rng rng(33);
        std::vector<double> s(n);
        for (auto& x : s) x = decomposed_signal_surrogate(betas, M, bbar, eta, rng);
        CHECK(testsup::mean(s) == doctest::Approx(varpi * bsum).epsilon(0.03));
    }
    SUBCASE("independent-multiplier signal surrogate") {
        Rng rng(34);
        double varpi = (M * 3.0 * (1.0 - eta) + 1.0) / 3.0;  // uses actual B = 3
        std::vector<double> s(n);
        for (auto& x : s) x = decomposed_signal_surrogate_iid(betas, M, eta, rng);
        CHECK(testsup::mean(s) == doctest::Approx(varpi * bsum).epsilon(0.03));
    }
    SUBCASE("interference surrogate") {
        Rng rng(35);
        std::vector<double> s(n);
        for (auto& x : s) x = decomposed_interference_surrogate(betas, M, eta, rng);
        CHECK(testsup::mean(s) == doctest::Approx(eta * M * bsum).epsilon(0.03));
    }
}

TEST_CASE("isotropic case: the matched law is exact") {
    // Equal betas make ||g||^2 / beta ~ Gamma(MB, 1) exactly; the matched
    // parameters reproduce that without approximation error.
    Rng rng(36);
    int M = 5, B = 2;
    double beta = 0.4;
    GammaParams g = intended_channel_params(std::vector<double>(B, beta), M);
    std::vector<double> s(4000);
    for (auto& x : s) {
        double acc = 0.0;
        for (int k = 0; k < M * B; ++k) {
            double re = rng.normal() * std::sqrt(0.5), im = rng.normal() * std::sqrt(0.5);
            acc += beta * (re * re + im * im);
        }
        x = acc;
    }
    double p = testsup::ks_test(
        s, [&](double x) { return testsup::gamma_cdf(x, g.shape, g.scale); });
    CHECK(p > 0.01);
}

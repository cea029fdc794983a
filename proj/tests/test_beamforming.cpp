#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "netmimo/beamforming.hpp"
#include "netmimo/channel.hpp"
#include "test_support.hpp"

using namespace netmimo;

namespace {

std::vector<Eigen::VectorXcd> random_channels(int k, int dim, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<Eigen::VectorXcd> g(k);
    for (auto& v : g) v = sample_fading(dim, rng);
    return g;
}

double worst_leakage(const std::vector<Eigen::VectorXcd>& g, const BeamSet& bs) {
    double worst = 0.0;
    int k = static_cast<int>(g.size());
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            if (j != i)
                worst = std::max(worst,
                                 std::norm(g[j].dot(bs.beams.col(i))) / g[j].squaredNorm());
    return worst;
}

}  // namespace

TEST_CASE("zero-forcing beams null every unintended user") {
    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL, 4ULL, 5ULL}) {
        auto g = random_channels(6, 10, seed);
        BeamSet bs = zf_beams(g, 10);
        REQUIRE(bs.beams.cols() == 6);
        REQUIRE(bs.beams.rows() == 10);
        CHECK(worst_leakage(g, bs) < 1e-12);
        for (int i = 0; i < 6; ++i)
            CHECK(bs.beams.col(i).norm() == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("projection and pseudo-inverse constructions agree") {
    auto g = random_channels(5, 8, 42);
    BeamSet a = zf_beams(g, 8);
    BeamSet b = zf_beams_pinv(g, 8);
    CHECK(worst_leakage(g, b) < 1e-10);
    for (int i = 0; i < 5; ++i) {
        // Same direction up to a unit phase.
        double align = std::abs(a.beams.col(i).dot(b.beams.col(i)));
        CHECK(align == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("fully loaded square case inverts the channel") {
    auto g = random_channels(4, 4, 7);
    BeamSet bs = zf_beams(g, 4);
    CHECK(worst_leakage(g, bs) < 1e-12);
}

TEST_CASE("degenerate channels are rejected") {
    auto g = random_channels(3, 6, 9);
    g[2] = g[1];  // coincident users
    CHECK_THROWS_AS(zf_beams(g, 6), DegenerateChannelError);
}

TEST_CASE("regularized inversion approaches zero-forcing as regularization vanishes") {
    auto g = random_channels(4, 8, 11);
    BeamSet zf = zf_beams(g, 8);
    BeamSet rz = rzf_beams(g, 8, 1e-12);
    for (int i = 0; i < 4; ++i)
        CHECK(std::abs(zf.beams.col(i).dot(rz.beams.col(i))) ==
              doctest::Approx(1.0).epsilon(1e-6));
    // With heavy regularization the beams turn into matched filters.
    BeamSet mf = rzf_beams(g, 8, 1e12);
    for (int i = 0; i < 4; ++i) {
        Eigen::VectorXcd gi = g[i].normalized();
        CHECK(std::abs(gi.dot(mf.beams.col(i))) == doctest::Approx(1.0).epsilon(1e-6));
    }
}

TEST_CASE("sinr assembles signal, interference and noise correctly") {
    // Orthonormal toy setup where every term is known in closed form.
    int dim = 4;
    Eigen::VectorXcd e0 = Eigen::VectorXcd::Zero(dim), e1 = Eigen::VectorXcd::Zero(dim);
    e0[0] = 1.0;
    e1[1] = 1.0;
    BeamSet own;
    own.beams = Eigen::MatrixXcd::Zero(dim, 1);
    own.beams.col(0) = e0;
    own.per_beam_power = 2.0;
    BeamSet other;
    other.beams = Eigen::MatrixXcd::Zero(dim, 2);
    other.beams.col(0) = e0;
    other.beams.col(1) = e1;
    other.per_beam_power = 3.0;

    Eigen::VectorXcd h = 0.5 * e0 + 0.25 * e1;
    double noise = 0.1, gap = 2.0;
    SinrSample s = sinr(h, own.beams.col(0), own.per_beam_power,
                        {{h, &other}}, noise, gap);
    // Signal: 2 * |h^H e0|^2 / noise; interference: 3 * (0.25 + 0.0625) / noise.
    CHECK(s.signal_power == doctest::Approx(2.0 * 0.25 / noise).epsilon(1e-12));
    CHECK(s.interference_power == doctest::Approx(3.0 * 0.3125 / noise).epsilon(1e-12));
    double gamma = s.signal_power / (1.0 + s.interference_power);
    CHECK(s.gamma == doctest::Approx(gamma).epsilon(1e-12));
    CHECK(s.rate == doctest::Approx(std::log2(1.0 + gamma / gap)).epsilon(1e-12));
}

TEST_CASE("zero-forcing signal power follows the chi-square reduction") {
    // For i.i.d. CN(0,1) channels, |g_i^H w_i|^2 ~ Gamma(M - K + 1, 1).
    int M = 6, K = 4, n = 2500;
    Rng rng(77);
    std::vector<double> s(n);
    for (auto& x : s) {
        std::vector<Eigen::VectorXcd> g(K);
        for (auto& v : g) v = sample_fading(M, rng);
        BeamSet bs = zf_beams(g, M);
        x = std::norm(g[0].dot(bs.beams.col(0)));
    }
    double p = testsup::ks_test(
        s, [&](double x) { return testsup::gamma_cdf(x, M - K + 1.0, 1.0); });
    CHECK(p > 0.01);
}

TEST_CASE("interfering beam power on an independent channel is Gamma(1, 1)") {
    // A unit-norm beam independent of f gives |f^H w|^2 ~ Exp(1).
    int M = 6, K = 3, n = 2500;
    Rng rng(78);
    std::vector<double> s(n);
    for (auto& x : s) {
        std::vector<Eigen::VectorXcd> g(K);
        for (auto& v : g) v = sample_fading(M, rng);
        BeamSet bs = zf_beams(g, M);
        Eigen::VectorXcd f = sample_fading(M, rng);
        x = std::norm(f.dot(bs.beams.col(1)));
    }
    double p = testsup::ks_test(s, [&](double x) { return testsup::gamma_cdf(x, 1.0, 1.0); });
    CHECK(p > 0.01);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "netmimo/quadrature.hpp"

using namespace netmimo;

TEST_CASE("known definite integrals") {
    CHECK(integrate([](double x) { return x * x; }, 0.0, 1.0) ==
          doctest::Approx(1.0 / 3.0).epsilon(1e-13));
    CHECK(integrate([](double x) { return std::exp(-x); }, 0.0, 50.0) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(integrate([](double x) { return std::sin(x); }, 0.0, M_PI) ==
          doctest::Approx(2.0).epsilon(1e-12));
    // Mildly singular derivative at the origin.
    CHECK(integrate([](double x) { return std::sqrt(x); }, 0.0, 1.0, 1e-12) ==
          doctest::Approx(2.0 / 3.0).epsilon(1e-10));
}

TEST_CASE("oscillatory integrand") {
    double v = integrate([](double x) { return std::cos(20.0 * x); }, 0.0, 1.0, 1e-12);
    CHECK(v == doctest::Approx(std::sin(20.0) / 20.0).epsilon(1e-11));
}

TEST_CASE("orientation and degenerate interval") {
    CHECK(integrate([](double x) { return x; }, 1.0, 0.0) ==
          doctest::Approx(-0.5).epsilon(1e-13));
    CHECK(integrate([](double) { return 1.0; }, 2.0, 2.0) == doctest::Approx(0.0));
}

TEST_CASE("gauss-legendre exactness on polynomials") {
    std::vector<double> x, w;
    for (int n : {4, 8, 16, 24, 32}) {
        gauss_legendre(n, x, w);
        REQUIRE(static_cast<int>(x.size()) == n);
        double wsum = 0.0;
        for (double wi : w) wsum += wi;
        CHECK(wsum == doctest::Approx(2.0).epsilon(1e-14));
        // Degree 2n-1 monomial integrates exactly.
        int p = 2 * n - 2;  // even degree so the integral is nonzero
        double q = 0.0;
        for (int i = 0; i < n; ++i) q += w[i] * std::pow(x[i], p);
        CHECK(q == doctest::Approx(2.0 / (p + 1)).epsilon(1e-12));
        // Symmetry of nodes about zero.
        for (int i = 0; i < n / 2; ++i)
            CHECK(x[i] == doctest::Approx(-x[n - 1 - i]).epsilon(1e-14));
    }
}

TEST_CASE("failure reporting on non-integrable input") {
    CHECK_THROWS_AS(integrate([](double x) { return 1.0 / x; }, 0.0, 1.0, 1e-10, 1e-12, 50),
                    NumericalError);
}

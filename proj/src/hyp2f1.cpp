#include "netmimo/hyp2f1.hpp"

#include <cmath>
#include <stdexcept>

namespace netmimo {

namespace {

constexpr int kMaxTerms = 4000;
constexpr double kEps = 1e-15;

// Gauss series sum_{n>=1} (a)_n (b)_n / ((c)_n n!) z^n, i.e. 2F1 - 1.
// Converges for |z| < 1.
double gauss_series_m1(double a, double b, double c, double z) {
    double term = 1.0, sum = 0.0;
    for (int n = 0; n < kMaxTerms; ++n) {
        term *= (a + n) * (b + n) / ((c + n) * (n + 1.0)) * z;
        sum += term;
        if (std::abs(term) <= kEps * (std::abs(sum) + 1.0)) return sum;
    }
    throw std::domain_error("hyp2f1: series did not converge");
}

// Lower incomplete beta B_x(p, q) = int_0^x t^(p-1) (1-t)^(q-1) dt for
// p > 0 and 0 <= x < 1 (q may be negative). Series in x.
double incomplete_beta(double p, double q, double x) {
    double sum = 0.0, coef = 1.0;  // coef = (1-q)_n / n!
    for (int n = 0; n < kMaxTerms; ++n) {
        double term = coef / (p + n);
        sum += term;
        coef *= (1.0 - q + n) * x / (n + 1.0);
        if (std::abs(coef / (p + n + 1.0)) <= kEps * std::abs(sum))
            return std::pow(x, p) * (sum + coef / (p + n + 1.0));
    }
    throw std::domain_error("hyp2f1: incomplete beta series did not converge");
}

// 2F1(a, b; b+1; -u) for u > 0, b in (-1, 0), via
//   u^(-b) [ Gamma(1+b) Gamma(a-b) / Gamma(a) - b B_x(a-b, b) ],  x = 1/(1+u).
double pattern_beta_form(double a, double b, double u) {
    double x = 1.0 / (1.0 + u);
    double lg = std::lgamma(1.0 + b) + std::lgamma(a - b) - std::lgamma(a);
    double c0 = std::exp(lg);
    return std::pow(u, -b) * (c0 - b * incomplete_beta(a - b, b, x));
}

bool is_pattern(double b, double c) {
    return b < 0.0 && b > -1.0 && std::abs(c - b - 1.0) < 1e-12;
}

}  // namespace

double hyp2f1_ratio_m1(double a, double b, double z) {
    if (z > 0.0) throw std::domain_error("hyp2f1_ratio_m1: requires z <= 0");
    if (!(b < 0.0 && b > -1.0)) throw std::domain_error("hyp2f1_ratio_m1: requires -1 < b < 0");
    if (z == 0.0 || a == 0.0) return 0.0;
    double u = -z;
    if (u <= 0.7) return gauss_series_m1(a, b, b + 1.0, z);
    return pattern_beta_form(a, b, u) - 1.0;
}

double hyp2f1(double a, double b, double c, double z) {
    if (z > 0.0) throw std::domain_error("hyp2f1: only z <= 0 is supported");
    if (z == 0.0) return 1.0;
    if (c <= 0.0 && c == std::floor(c)) throw std::domain_error("hyp2f1: c is a non-positive integer");
    if (is_pattern(b, c)) return 1.0 + hyp2f1_ratio_m1(a, b, z);
    if (std::abs(z) <= 0.7) return 1.0 + gauss_series_m1(a, b, c, z);
    // Pfaff transformation maps z < 0 into w = z/(z-1) in (0, 1).
    double w = z / (z - 1.0);
    if (w > 0.99)
        throw std::domain_error("hyp2f1: argument too large for the general-parameter path");
    return std::pow(1.0 - z, -a) * (1.0 + gauss_series_m1(a, c - b, c, w));
}

}  // namespace netmimo

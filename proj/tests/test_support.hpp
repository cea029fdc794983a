#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

namespace testsup {

// Regularized lower incomplete gamma P(k, x) by series / continued fraction.
inline double gamma_p(double k, double x) {
    if (x <= 0.0) return 0.0;
    if (x < k + 1.0) {
        double term = 1.0 / k, sum = term;
        for (int n = 1; n < 500; ++n) {
            term *= x / (k + n);
            sum += term;
            if (term < sum * 1e-16) break;
        }
        return sum * std::exp(k * std::log(x) - x - std::lgamma(k));
    }
    // Lentz's continued fraction for Q(k, x).
    double tiny = 1e-300;
    double b = x + 1.0 - k, c = 1.0 / tiny, d = 1.0 / b, h = d;
    for (int i = 1; i < 500; ++i) {
        double an = -i * (i - k);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-15) break;
    }
    double q = std::exp(k * std::log(x) - x - std::lgamma(k)) * h;
    return 1.0 - q;
}

inline double gamma_cdf(double x, double shape, double scale) {
    return gamma_p(shape, x / scale);
}

// Asymptotic Kolmogorov distribution tail: P(sqrt(n) D > t).
inline double ks_pvalue(double d, int n) {
    double t = (std::sqrt(static_cast<double>(n)) + 0.12 + 0.11 / std::sqrt(static_cast<double>(n))) * d;
    double sum = 0.0;
    for (int j = 1; j <= 100; ++j) {
        double term = 2.0 * ((j % 2 == 1) ? 1.0 : -1.0) * std::exp(-2.0 * j * j * t * t);
        sum += term;
        if (std::abs(term) < 1e-12) break;
    }
    return std::clamp(sum, 0.0, 1.0);
}

// One-sample KS test of `samples` against continuous CDF `cdf`.
inline double ks_test(std::vector<double> samples, const std::function<double(double)>& cdf) {
    std::sort(samples.begin(), samples.end());
    int n = static_cast<int>(samples.size());
    double d = 0.0;
    for (int i = 0; i < n; ++i) {
        double f = cdf(samples[i]);
        d = std::max(d, std::max(f - i / static_cast<double>(n), (i + 1) / static_cast<double>(n) - f));
    }
    return ks_pvalue(d, n);
}

inline double mean(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / v.size();
}

inline double variance(const std::vector<double>& v) {
    double m = mean(v), s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return s / (v.size() - 1);
}

}  // namespace testsup

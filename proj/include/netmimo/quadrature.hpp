#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

namespace netmimo {

struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Adaptive Gauss-Kronrod (G7/K15) on a finite interval.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol = 1e-10, double abs_tol = 1e-300,
                 int max_intervals = 20000);

// Gauss-Legendre nodes/weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace netmimo

#include "netmimo/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace netmimo {

namespace {

// 15-point Kronrod extension of 7-point Gauss. Columns: abscissa,
// Gauss weight (0 for Kronrod-only nodes), Kronrod weight.
const double kNW[8][3] = {
    {0.000000000000000, 0.417959183673469, 0.209482141084728},
    {0.405845151377397, 0.381830050505119, 0.190350578064785},
    {0.741531185599394, 0.279705391489277, 0.140653259715525},
    {0.949107912342759, 0.129484966168870, 0.063092092629979},
    {0.207784955007898, 0.0, 0.204432940075298},
    {0.586087235467691, 0.0, 0.169004726639267},
    {0.864864423359769, 0.0, 0.104790010322250},
    {0.991455371120813, 0.0, 0.022935322010529}};

struct Panel {
    double a, b, value, err;
    bool operator<(const Panel& o) const { return err < o.err; }
};

Panel eval_panel(const std::function<double(double)>& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double y0 = f(mid);
    double g7 = kNW[0][1] * y0;
    double k15 = kNW[0][2] * y0;
    for (int i = 1; i < 8; ++i) {
        double dx = h * kNW[i][0];
        double yi = f(mid + dx) + f(mid - dx);
        g7 += kNW[i][1] * yi;
        k15 += kNW[i][2] * yi;
    }
    g7 *= h;
    k15 *= h;
    double err = std::abs(k15 - g7);
    return {a, b, k15, err};
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol, double abs_tol, int max_intervals) {
    if (a == b) return 0.0;
    std::priority_queue<Panel> q;
    Panel p0 = eval_panel(f, a, b);
    double total = p0.value, total_err = p0.err;
    q.push(p0);
    int n = 1;
    while (total_err > std::max(abs_tol, rel_tol * std::abs(total))) {
        if (n >= max_intervals)
            throw NumericalError("adaptive quadrature did not converge (intervals=" +
                                 std::to_string(n) + ", err=" + std::to_string(total_err) + ")");
        Panel worst = q.top();
        q.pop();
        double mid = 0.5 * (worst.a + worst.b);
        Panel l = eval_panel(f, worst.a, mid);
        Panel r = eval_panel(f, mid, worst.b);
        total += l.value + r.value - worst.value;
        total_err += l.err + r.err - worst.err;
        q.push(l);
        q.push(r);
        ++n;
        if (!std::isfinite(total))
            throw NumericalError("adaptive quadrature produced a non-finite value");
    }
    return total;
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.assign(n, 0.0);
    weights.assign(n, 0.0);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        // Newton from the Chebyshev-like initial guess.
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * pp * pp);
    }
}

}  // namespace netmimo

#pragma once

#include <Eigen/Dense>
#include <vector>

#include "netmimo/geometry.hpp"
#include "netmimo/rng.hpp"

namespace netmimo {

struct PathLossParams {
    double d_o = 0.3920;
    double alpha = 3.76;
};

// Stacked channel from a set of BSs to one user: block b is
// sqrt(beta_b) * h_b with h_b ~ CN(0, I_M).
struct CompositeChannel {
    Eigen::VectorXcd coeffs;             // length M * B
    std::vector<double> per_bs_pathloss; // beta_b, length B
};

// Bounded path-loss model: beta = (1 + r/d_o)^(-alpha), beta(0) = 1.
double path_loss(double r, const PathLossParams& p);

// i.i.d. CN(0,1) entries (real/imag each variance 1/2).
Eigen::VectorXcd sample_fading(int dim, Rng& rng);

CompositeChannel composite_channel(const Point2D& user,
                                   const std::vector<Point2D>& bs_list,
                                   int antennas, const PathLossParams& p,
                                   Rng& rng);

}  // namespace netmimo

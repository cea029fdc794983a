#include "netmimo/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace netmimo {

double path_loss(double r, const PathLossParams& p) {
    if (r < 0.0) throw std::invalid_argument("path_loss: distance must be >= 0");
    return std::pow(1.0 + r / p.d_o, -p.alpha);
}

Eigen::VectorXcd sample_fading(int dim, Rng& rng) {
    if (dim < 1) throw std::invalid_argument("sample_fading: dim must be >= 1");
    Eigen::VectorXcd h(dim);
    const double s = std::sqrt(0.5);
    for (int i = 0; i < dim; ++i)
        h(i) = std::complex<double>(s * rng.normal(), s * rng.normal());
    return h;
}

CompositeChannel composite_channel(const Point2D& user,
                                   const std::vector<Point2D>& bs_list,
                                   int antennas, const PathLossParams& p,
                                   Rng& rng) {
    if (bs_list.empty()) throw std::invalid_argument("composite_channel: empty BS list");
    const int B = static_cast<int>(bs_list.size());
    CompositeChannel ch;
    ch.coeffs.resize(antennas * B);
    ch.per_bs_pathloss.resize(B);
    for (int b = 0; b < B; ++b) {
        double r = std::hypot(user.x - bs_list[b].x, user.y - bs_list[b].y);
        double beta = path_loss(r, p);
        ch.per_bs_pathloss[b] = beta;
        ch.coeffs.segment(b * antennas, antennas) =
            std::sqrt(beta) * sample_fading(antennas, rng);
    }
    return ch;
}

}  // namespace netmimo

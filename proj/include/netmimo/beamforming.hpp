#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <vector>

namespace netmimo {

struct DegenerateChannelError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct BeamSet {
    Eigen::MatrixXcd beams;       // MB x K, unit-norm columns
    double per_beam_power = 0.0;  // watts, B_l * P_T / K_l
};

struct SinrSample {
    double signal_power = 0.0;        // noise-normalized
    double interference_power = 0.0;  // noise-normalized
    double gamma = 0.0;
    double rate = 0.0;  // bits/s/Hz, log2(1 + gamma/gap)
};

// ZF: column i is the unit-norm projection of the normalized channel g_i
// onto the null space of the other users' normalized channels.
// Throws DegenerateChannelError on (measure-zero) rank deficiency.
BeamSet zf_beams(const std::vector<Eigen::VectorXcd>& channels, int dim,
                 double per_beam_power = 0.0);

// Pseudo-inverse route to the same directions; cross-check for zf_beams.
BeamSet zf_beams_pinv(const std::vector<Eigen::VectorXcd>& channels, int dim,
                      double per_beam_power = 0.0);

// Regularized channel inversion: columns of G (G^H G + reg I)^{-1},
// unit-normalized.
BeamSet rzf_beams(const std::vector<Eigen::VectorXcd>& channels, int dim, double reg,
                  double per_beam_power = 0.0);

SinrSample sinr(const Eigen::VectorXcd& user_channel, const Eigen::VectorXcd& own_beam,
                double own_power_watts,
                const std::vector<std::pair<Eigen::VectorXcd, const BeamSet*>>& interferers,
                double noise_watts, double gap_linear);

}  // namespace netmimo

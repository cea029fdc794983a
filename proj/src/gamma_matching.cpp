#include "netmimo/gamma_matching.hpp"

#include <cmath>
#include <stdexcept>

namespace netmimo {

namespace {

GammaParams matched_channel(const std::vector<double>& betas, int antennas) {
    if (betas.empty()) throw std::invalid_argument("moment matching needs at least one path loss");
    double s1 = 0.0, s2 = 0.0;
    for (double b : betas) {
        s1 += b;
        s2 += b * b;
    }
    return {antennas * s1 * s1 / s2, s2 / s1};
}

}  // namespace

GammaParams moment_match(const std::vector<GammaParams>& components) {
    if (components.empty()) throw std::invalid_argument("moment_match: empty component list");
    double m1 = 0.0, m2 = 0.0;  // sum k*theta, sum k*theta^2
    for (const auto& c : components) {
        m1 += c.shape * c.scale;
        m2 += c.shape * c.scale * c.scale;
    }
    return {m1 * m1 / m2, m2 / m1};
}

GammaParams intended_channel_params(const std::vector<double>& pathlosses, int antennas) {
    return matched_channel(pathlosses, antennas);
}

GammaParams interference_channel_params(const std::vector<double>& pathlosses, int antennas) {
    return matched_channel(pathlosses, antennas);
}

GammaParams signal_power_params(const GammaParams& intended, int antennas, int bs_count,
                                double eta) {
    if (!(eta > 0.0 && eta <= 1.0)) throw std::invalid_argument("eta must be in (0, 1]");
    double mb = static_cast<double>(antennas) * bs_count;
    double zeta = mb * (1.0 - eta) + 1.0;  // beamforming subspace dimension
    return {intended.shape * zeta / mb, intended.scale};
}

GammaParams interference_beam_power_params(const GammaParams& interf, int antennas,
                                           int bs_count) {
    double mb = static_cast<double>(antennas) * bs_count;
    return {interf.shape / mb, interf.scale};
}

GammaParams aggregate_interference_params(const GammaParams& interf, double eta) {
    return {eta * interf.shape, interf.scale};
}

double decomposed_signal_surrogate(const std::vector<double>& pathlosses, int antennas,
                                   double avg_bs_count, double eta, Rng& rng) {
    if (!(avg_bs_count >= 1.0)) throw std::invalid_argument("Bbar must be >= 1");
    double shape = (antennas * avg_bs_count * (1.0 - eta) + 1.0) / avg_bs_count;
    double kappa = rng.gamma(shape, 1.0);
    double s = 0.0;
    for (double b : pathlosses) s += b;
    return kappa * s;
}

double decomposed_signal_surrogate_iid(const std::vector<double>& pathlosses, int antennas,
                                       double eta, Rng& rng) {
    double B = static_cast<double>(pathlosses.size());
    double shape = (antennas * B * (1.0 - eta) + 1.0) / B;
    double s = 0.0;
    for (double b : pathlosses) s += b * rng.gamma(shape, 1.0);
    return s;
}

double decomposed_interference_surrogate(const std::vector<double>& pathlosses, int antennas,
                                         double eta, Rng& rng) {
    if (!(eta > 0.0 && eta <= 1.0)) throw std::invalid_argument("eta must be in (0, 1]");
    double s = 0.0;
    for (double b : pathlosses) s += b * rng.gamma(eta * antennas, 1.0);
    return s;
}

}  // namespace netmimo

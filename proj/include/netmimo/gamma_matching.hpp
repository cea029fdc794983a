#pragma once

#include <utility>
#include <vector>

#include "netmimo/rng.hpp"

namespace netmimo {

struct GammaParams {
    double shape = 1.0;  // k
    double scale = 1.0;  // theta
    double mean() const { return shape * scale; }
    double variance() const { return shape * scale * scale; }
};

struct MatchedChannelStats {
    GammaParams intended;
    std::vector<GammaParams> interferers;
};

// Second-order moment matching: the surrogate Gamma has exactly the mean
// and variance of the sum of the independent Gamma components.
GammaParams moment_match(const std::vector<GammaParams>& components);

// Matched Gamma for the composite channel strength ||g||^2:
// k = M (sum beta)^2 / sum beta^2, theta = sum beta^2 / sum beta.
GammaParams intended_channel_params(const std::vector<double>& pathlosses, int antennas);
// Same structure for the inter-cluster channel ||f||^2.
GammaParams interference_channel_params(const std::vector<double>& pathlosses, int antennas);

// Signal power |g^H w|^2 under ZF with K = eta*M*B scheduled users:
// shape scaled by the fraction of the space left for beamforming.
GammaParams signal_power_params(const GammaParams& intended, int antennas, int bs_count,
                                double eta);

// Single interfering beam |f^H w|^2: shape k / (M B_j), same scale.
GammaParams interference_beam_power_params(const GammaParams& interf, int antennas,
                                           int bs_count);

// Aggregate interference from one cluster: K_j = eta*M*B_j orthogonal-beam
// assumption gives Gamma(eta * k, theta).
GammaParams aggregate_interference_params(const GammaParams& interf, double eta);

// Signal-power surrogate with one kappa ~ Gamma((M Bbar (1-eta)+1)/Bbar, 1)
// shared across the path-loss sum.
double decomposed_signal_surrogate(const std::vector<double>& pathlosses, int antennas,
                                   double avg_bs_count, double eta, Rng& rng);
// Variant with an independent kappa_b per BS (shape uses the actual B_l).
double decomposed_signal_surrogate_iid(const std::vector<double>& pathlosses, int antennas,
                                       double eta, Rng& rng);

// Cluster interference surrogate: sum_b beta_b * psi_b, psi ~ Gamma(eta*M, 1).
double decomposed_interference_surrogate(const std::vector<double>& pathlosses, int antennas,
                                         double eta, Rng& rng);

}  // namespace netmimo

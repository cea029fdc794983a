#pragma once

#include <cstdint>
#include <vector>

#include "netmimo/config.hpp"
#include "netmimo/gamma_matching.hpp"
#include "netmimo/geometry.hpp"

namespace netmimo {

enum class Association { LocationBased, ChannelBased };
enum class BsCountModel { Poisson, FixedPerCluster };
enum class Beamformer { Zf, Rzf };
enum class Scenario { FullNetwork, IsolatedCluster, IsolatedCell, SingleCellProcessing };

struct SimPlan {
    int n_topologies = 200;
    int n_fading = 20;
    std::uint64_t seed = 1;
    Association association = Association::LocationBased;
    BsCountModel bs_count_model = BsCountModel::Poisson;
    Beamformer beamformer = Beamformer::Zf;
    Scenario scenario = Scenario::FullNetwork;
    double eta = 0.6;
    double avg_bs_count = 4.0;
    int layers = 2;           // interference rings; 19 clusters at 2
    int workers = 1;
    double user_density_mult = 20.0;  // users per BS, CDF experiments
};

struct SimResult {
    double per_bs_rate = 0.0;  // bits/s/Hz, center cluster
    double ci95 = 0.0;
    int redraw_count = 0;  // topologies redrawn for an empty center cluster
    std::vector<double> per_topology_rates;
    std::vector<double> user_rate_samples;  // filled by user_rate_cdf
};

// Ergodic per-BS sum rate of the center cluster, averaged over topologies
// and fading. Deterministic given (plan, config): every topology owns a
// counter-derived RNG substream, so the worker count does not matter.
SimResult run(const SimPlan& plan, const SystemConfig& config);

// Cluster index per user under the requested association rule; channel-based
// maximizes the path-loss sum over clusters, ties resolved by location.
std::vector<int> associate_users(const Topology& topo, const std::vector<Point2D>& users,
                                 const SystemConfig& config, Association mode);

// Fading-only power samples for a deterministic BS layout, with the matched
// Gamma parameters for the signal (|g^H w|^2) and a single interfering beam
// (|f^H w|^2) distributions.
struct PowerSamples {
    std::vector<double> signal;
    std::vector<double> interference;
    GammaParams signal_params;
    GammaParams interference_params;
};
PowerSamples collect_power_samples(const std::vector<double>& signal_pathlosses,
                                   const std::vector<double>& interferer_pathlosses,
                                   int antennas, double eta, int n_samples,
                                   std::uint64_t seed);

// Long-run per-user rates under round-robin sharing of the K_l slots among a
// persistent user pool (density = user_density_mult * lambda).
SimResult user_rate_cdf(const SimPlan& plan, const SystemConfig& config);

}  // namespace netmimo

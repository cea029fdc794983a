#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "netmimo/config.hpp"

namespace netmimo {

struct AnalyticParams {
    double lambda = 0.0;  // BS density [1/m^2]
    double antennas = 0.0;  // M
    double eta = 0.0;
    double avg_bs_count = 0.0;  // Bbar
    double rho = 0.0;           // P_T / (eta M sigma^2), linear
    double gap = 1.0;           // SNR gap, linear
    double alpha = 0.0;
    double d_o = 0.0;
    double R_c = 0.0;
    double varpi = 0.0;  // (M Bbar (1-eta) + 1) / Bbar
    bool include_interference = true;

    static AnalyticParams from(const SystemConfig& cfg, double eta, double avg_bs_count);
};

struct QuadratureSpec {
    int z_nodes = 32;       // initial panels for the adaptive z integral
    int theta_nodes = 64;   // periodic trapezoid nodes
    int d_nodes = 24;       // Gauss-Legendre nodes for the radial average
    double radial_rel_tol = 1e-6;
    double tail_split = 10.0;  // oracle tail split multiplier
    double kernel_rel_tol = 1e-6;
    double rate_rel_tol = 1e-4;
};

struct RateResult {
    double value = 0.0;  // bits/s/Hz per BS
    std::string method;
    double ci_halfwidth = 0.0;
    std::uint64_t params_digest = 0;
};

// Interference-side angular kernels (bracketed expressions; may be negative
// individually, but lambda * integral(psi_I - psi_II) >= 0).
double psi_I(double theta, double z, double d, const AnalyticParams& p);
double psi_II(double theta, double z, double d, const AnalyticParams& p);
// Signal-side angular kernels.
double upsilon_I(double theta, double z, double d, const AnalyticParams& p);
double upsilon_II(double theta, double z, double d, const AnalyticParams& p);

// Log-MGF exponents x such that M(z) = exp(-x); both are >= 0.
double interference_exponent(double d, double z, const AnalyticParams& p, int theta_nodes);
double signal_exponent(double d, double z, const AnalyticParams& p, int theta_nodes);

// Ergodic rate of a user at distance d from the cluster center [bits/s/Hz].
double ergodic_rate_at_distance(double d, const AnalyticParams& p, const QuadratureSpec& q);

// eta*M * E_d[rate(d)] with f(d) = 2d/R_c^2 on [0, R_c].
RateResult per_bs_ergodic_sum_rate(const AnalyticParams& p, const QuadratureSpec& q);

// Asymptotic (R_c -> infinity) upper bound [bits/s/Hz]; exactly 0 at eta = 1.
double asymptotic_upper_bound(const AnalyticParams& p);

// Upper bound on E||g||^2 for any user in the cluster.
double expected_channel_strength_bound(const AnalyticParams& p);

// Finite-R_c upper bound on the expected ZF signal power E|g^H w|^2.
double finite_Rc_signal_bound(const AnalyticParams& p);

struct LoadingFactorResult {
    double eta_star = 0.0;
    std::vector<std::pair<double, double>> curve;  // (eta, rate)
};

// Grid search over eta with rho recomputed per point; ties go to smaller eta.
LoadingFactorResult optimal_loading_factor(const SystemConfig& cfg, double avg_bs_count,
                                           const std::vector<double>& eta_grid,
                                           const QuadratureSpec& q);

// Interference-free single-BS baseline: K = round(eta*M) users, signal power
// beta(d) * Gamma(M-K+1, 1), user distance density 2d/R_1^2 with
// R_1 = sqrt(1/(lambda pi)). Returns the per-BS sum rate [bits/s/Hz].
double isolated_cell_per_bs_rate(const SystemConfig& cfg, double eta);

}  // namespace netmimo

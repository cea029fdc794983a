#pragma once

#include <cmath>
#include <cstdint>
#include <string>

namespace netmimo {

// System-level physical and network parameters. Defaults correspond to a
// macro-cellular deployment with 1 km average inter-site distance.
struct SystemConfig {
    double lambda = 1.0 / (M_PI * 500.0 * 500.0);  // BS density [1/m^2]
    double bandwidth_hz = 20e6;                    // W
    double tx_power_dbm = 43.0;                    // P_T, per-BS average
    double noise_psd_dbm_hz = -174.0;              // N_o
    double noise_figure_db = 9.0;                  // N_f
    double snr_gap_db = 3.0;                       // Gamma
    double alpha = 3.76;                           // path-loss exponent
    double d_o = 0.3920;                           // reference distance [m]
    int antennas = 5;                              // M per BS

    double tx_power_watts() const;
    double noise_watts() const;       // N_o + 10 log10(W) + N_f, linearized
    double snr_gap_linear() const;
    // rho = P_T / (eta * M * sigma^2)
    double snr_rho(double eta) const;

    void validate() const;  // throws std::invalid_argument naming the key
    std::string canonical_string() const;
    std::uint64_t digest() const;
};

inline double dbm_to_watts(double dbm) { return std::pow(10.0, dbm / 10.0 - 3.0); }
inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

// Flat key=value config file; unspecified keys keep defaults.
SystemConfig load_config(const std::string& path);
SystemConfig parse_config_text(const std::string& text);

}  // namespace netmimo

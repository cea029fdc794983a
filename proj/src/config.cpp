#include "netmimo/config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace netmimo {

double SystemConfig::tx_power_watts() const { return dbm_to_watts(tx_power_dbm); }

double SystemConfig::noise_watts() const {
    double dbm = noise_psd_dbm_hz + 10.0 * std::log10(bandwidth_hz) + noise_figure_db;
    return dbm_to_watts(dbm);
}

double SystemConfig::snr_gap_linear() const { return db_to_linear(snr_gap_db); }

double SystemConfig::snr_rho(double eta) const {
    return tx_power_watts() / (eta * antennas * noise_watts());
}

void SystemConfig::validate() const {
    if (!(lambda > 0.0)) throw std::invalid_argument("lambda: must be > 0");
    if (!(bandwidth_hz > 0.0)) throw std::invalid_argument("W: must be > 0");
    if (!(alpha > 2.0)) throw std::invalid_argument("alpha: alpha > 2 required");
    if (!(d_o > 0.0)) throw std::invalid_argument("d_o: must be > 0");
    if (antennas < 1) throw std::invalid_argument("M: must be >= 1");
    if (snr_gap_db < 0.0) throw std::invalid_argument("gap: must be >= 0 dB");
}

std::string SystemConfig::canonical_string() const {
    char buf[512];
    std::snprintf(buf, sizeof(buf),
                  "lambda=%.17g;W=%.17g;P_T=%.17g;N_o=%.17g;N_f=%.17g;"
                  "gap=%.17g;alpha=%.17g;d_o=%.17g;M=%d",
                  lambda, bandwidth_hz, tx_power_dbm, noise_psd_dbm_hz,
                  noise_figure_db, snr_gap_db, alpha, d_o, antennas);
    return std::string(buf);
}

std::uint64_t SystemConfig::digest() const {
    // FNV-1a 64
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : canonical_string()) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

SystemConfig parse_config_text(const std::string& text) {
    SystemConfig cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto eq = line.find('=');
        // skip blank lines
        bool blank = line.find_first_not_of(" \t\r") == std::string::npos;
        if (blank) continue;
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": expected key=value");
        auto trim = [](std::string s) {
            auto a = s.find_first_not_of(" \t\r");
            auto b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        double x = 0.0;
        try {
            std::size_t pos = 0;
            x = std::stod(val, &pos);
            if (pos != val.size()) throw std::invalid_argument(val);
        } catch (const std::exception&) {
            throw std::invalid_argument(key + ": cannot parse value '" + val + "'");
        }
        if (key == "lambda") cfg.lambda = x;
        else if (key == "W") cfg.bandwidth_hz = x;
        else if (key == "P_T") cfg.tx_power_dbm = x;
        else if (key == "N_o") cfg.noise_psd_dbm_hz = x;
        else if (key == "N_f") cfg.noise_figure_db = x;
        else if (key == "gap") cfg.snr_gap_db = x;
        else if (key == "alpha") cfg.alpha = x;
        else if (key == "d_o") cfg.d_o = x;
        else if (key == "M") cfg.antennas = static_cast<int>(x);
        else throw std::invalid_argument(key + ": unknown configuration key");
    }
    cfg.validate();
    return cfg;
}

SystemConfig load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("config file not found: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_config_text(ss.str());
}

}  // namespace netmimo
